//! Constructors for the standard families of modular data and the Deligne
//! product.

use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyc, RootOfUnity};
use crate::error::{Error, Result};
use crate::modular::ModularDatum;
use crate::numtheory::{gcd, lcm, residue};

/// Largest metric group accepted; the pointed S matrix has order² entries.
pub const MAX_GROUP_ORDER: u64 = 4096;

/// A finite abelian group ⊕ C_{n_i} with a quadratic form given by its value
/// table. Elements are indexed in mixed radix, last coordinate fastest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MetricGroupWire")]
pub struct MetricGroup {
    cyclic_orders: Vec<u64>,
    q: Vec<RootOfUnity>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricGroupWire {
    cyclic_orders: Vec<u64>,
    q: Vec<RootOfUnity>,
}

impl TryFrom<MetricGroupWire> for MetricGroup {
    type Error = Error;

    fn try_from(w: MetricGroupWire) -> Result<Self> {
        MetricGroup::new(w.cyclic_orders, w.q)
    }
}

impl MetricGroup {
    /// Checks q(0) = 1, q(-g) = q(g) and that b(g,h) = q(g+h)/(q(g)q(h)) is
    /// bimultiplicative.
    pub fn new(cyclic_orders: Vec<u64>, q: Vec<RootOfUnity>) -> Result<Self> {
        if cyclic_orders.contains(&0) {
            return Err(Error::InvalidParameter("cyclic factor of order 0".into()));
        }
        let size = cyclic_orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .filter(|&s| s <= MAX_GROUP_ORDER)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("group order above {MAX_GROUP_ORDER}"))
            })?;
        if q.len() as u64 != size {
            return Err(Error::InvalidParameter(format!(
                "quadratic form has {} values for a group of order {size}",
                q.len()
            )));
        }
        let mg = MetricGroup { cyclic_orders, q };
        if !mg.q[0].is_one() {
            return Err(Error::InvalidParameter("q(0) must be 1".into()));
        }
        for g in 0..mg.order() {
            if mg.q[g] != mg.q[mg.neg(g)] {
                return Err(Error::InvalidParameter(format!(
                    "q(-g) != q(g) at element {g}"
                )));
            }
        }
        // additivity in the first slot along each generator forces bimultiplicativity
        for e in mg.generators() {
            for g in 0..mg.order() {
                for h in 0..mg.order() {
                    if mg.b(mg.add(g, e), h) != mg.b(g, h).mul(&mg.b(e, h)) {
                        return Err(Error::InvalidParameter(format!(
                            "b is not bimultiplicative at ({g}, {h})"
                        )));
                    }
                }
            }
        }
        Ok(mg)
    }

    /// C_n with q(g) = ζ_n^{j g²} for odd n and ζ_{2n}^{j g²} for even n.
    pub fn cyclic_standard(n: u64, j: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("C_0".into()));
        }
        let m = if n.is_multiple_of(2) { 2 * n } else { n };
        let q = (0..n)
            .map(|g| RootOfUnity::new(m, residue(j, m) as i64 * ((g * g) % m) as i64))
            .collect();
        MetricGroup::new(vec![n], q)
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn order(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self, g: usize) -> RootOfUnity {
        self.q[g]
    }

    pub fn coords(&self, mut g: usize) -> Vec<u64> {
        let mut out = vec![0; self.cyclic_orders.len()];
        for (i, &n) in self.cyclic_orders.iter().enumerate().rev() {
            out[i] = g as u64 % n;
            g /= n as usize;
        }
        out
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        self.cyclic_orders
            .iter()
            .zip(coords)
            .fold(0usize, |acc, (&n, &c)| acc * n as usize + (c % n) as usize)
    }

    pub fn add(&self, g: usize, h: usize) -> usize {
        let (a, b) = (self.coords(g), self.coords(h));
        let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        self.index(&sum)
    }

    pub fn neg(&self, g: usize) -> usize {
        let a = self.coords(g);
        let neg: Vec<u64> = a
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        self.index(&neg)
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.cyclic_orders.len())
            .map(|i| {
                let mut c = vec![0; self.cyclic_orders.len()];
                c[i] = 1;
                self.index(&c)
            })
            .collect()
    }

    /// b(g, h) = q(g+h) / (q(g) q(h)).
    pub fn b(&self, g: usize, h: usize) -> RootOfUnity {
        self.q[self.add(g, h)].div(&self.q[g].mul(&self.q[h]))
    }

    fn label(&self, g: usize) -> String {
        let c = self.coords(g);
        match c.as_slice() {
            [x] => x.to_string(),
            _ => format!(
                "({})",
                c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

/// Pointed modular data: S[g][h] = b(g, h), T[g] = q(g)⁻¹.
pub fn pointed(mg: &MetricGroup) -> ModularDatum {
    let n = mg.q.iter().fold(1, |acc, z| lcm(acc, z.order()));
    let r = mg.order();
    let as_cyc = |z: RootOfUnity| Cyc::root_of_unity(n, z.exponent_over(n) as i64);
    let mut s = vec![Vec::with_capacity(r); r];
    for (g, row) in s.iter_mut().enumerate() {
        let mut cache = std::collections::HashMap::new();
        for h in 0..r {
            let z = mg.b(g, h);
            row.push(cache.entry(z).or_insert_with(|| as_cyc(z)).clone());
        }
    }
    let t = mg.q.iter().map(RootOfUnity::inv).collect();
    let labels = (0..r).map(|g| mg.label(g)).collect();
    ModularDatum::new_unchecked(labels, s, t)
}

pub fn trivial() -> ModularDatum {
    ModularDatum::new_unchecked(
        vec!["1".into()],
        vec![vec![Cyc::one()]],
        vec![RootOfUnity::ONE],
    )
}

/// Ising data for ζ = ζ₁₆^j and sign ε.
pub fn ising(j: i64, eps: i64) -> Result<ModularDatum> {
    if j % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "Ising needs odd j, got {j}"
        )));
    }
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidParameter(format!(
            "sign must be ±1, got {eps}"
        )));
    }
    let zeta = |k: i64| Cyc::root_of_unity(16, j * k);
    let d = zeta(2) + zeta(-2);
    let ed = d.scale(&crate::cyclo::rat(eps, 1));
    let one = Cyc::one();
    let s = vec![
        vec![one.clone(), one.clone(), ed.clone()],
        vec![one.clone(), one, -&ed],
        vec![ed.clone(), -&ed, Cyc::zero()],
    ];
    let sign_shift = if eps == 1 { 0 } else { 8 };
    let t = vec![
        RootOfUnity::ONE,
        RootOfUnity::minus_one(),
        RootOfUnity::new(16, -j + sign_shift),
    ];
    Ok(ModularDatum::new_unchecked(
        labels(&["1", "delta", "X"]),
        s,
        t,
    ))
}

/// Fibonacci data for q = ζ₁₀^j; only j mod 5 matters and it must be nonzero.
pub fn fibonacci(j: i64) -> Result<ModularDatum> {
    if j.rem_euclid(5) == 0 {
        return Err(Error::InvalidParameter(format!(
            "q = ζ₁₀^{j} does not make q² a primitive 5th root"
        )));
    }
    let q2 = |k: i64| Cyc::root_of_unity(5, j * k);
    let d = q2(1) + q2(-1) + Cyc::one();
    let s = vec![vec![Cyc::one(), d.clone()], vec![d, Cyc::from_int(-1)]];
    let t = vec![RootOfUnity::ONE, RootOfUnity::new(5, 2 * j)];
    Ok(ModularDatum::new_unchecked(labels(&["1", "X"]), s, t))
}

/// Rank 6 data at ζ = ζ₉^j, built from u = ζ - ζ² - ζ⁵ and σ: ζ ↦ ζ².
pub fn so5_level9(j: i64) -> Result<ModularDatum> {
    if gcd(residue(j, 9), 9) != 1 {
        return Err(Error::InvalidParameter(format!(
            "j = {j} is not coprime to 9"
        )));
    }
    let zeta = |k: i64| Cyc::root_of_unity(9, j * k);
    // σ^i(u) replaces ζ by ζ^{2^i}
    let u = |i: u32| {
        let p = 2i64.pow(i);
        zeta(p) - zeta(2 * p) - zeta(5 * p)
    };
    let (u0, u1, u2) = (u(0), u(1), u(2));
    let one = Cyc::one;
    let m1 = || Cyc::from_int(-1);
    let s = vec![
        vec![one(), m1(), one(), u0.clone(), u1.clone(), u2.clone()],
        vec![m1(), one(), m1(), -&u1, -&u2, -&u0],
        vec![one(), m1(), one(), u2.clone(), u0.clone(), u1.clone()],
        vec![u0.clone(), -&u1, u2.clone(), one(), one(), one()],
        vec![u1.clone(), -&u2, u0.clone(), one(), one(), one()],
        vec![u2, -&u0, u1, one(), one(), one()],
    ];
    let t = [0, 6, 3, 5, 8, 2]
        .iter()
        .map(|&k| RootOfUnity::new(9, j * k))
        .collect();
    Ok(ModularDatum::new_unchecked(
        labels(&["1", "X1", "X2", "X3", "X4", "X5"]),
        s,
        t,
    ))
}

/// Deligne product: Kronecker S, entrywise T, labels `X⊠Y`.
pub fn deligne_product(a: &ModularDatum, b: &ModularDatum) -> ModularDatum {
    let (ra, rb) = (a.rank(), b.rank());
    let mut labels = Vec::with_capacity(ra * rb);
    let mut t = Vec::with_capacity(ra * rb);
    for x in 0..ra {
        for y in 0..rb {
            labels.push(format!("{}⊠{}", a.labels()[x], b.labels()[y]));
            t.push(a.t()[x].mul(&b.t()[y]));
        }
    }
    let s = (0..ra * rb)
        .map(|i| {
            (0..ra * rb)
                .map(|k| &a.s()[i / rb][k / rb] * &b.s()[i % rb][k % rb])
                .collect()
        })
        .collect();
    ModularDatum::new_unchecked(labels, s, t)
}

/// Metric group of the double of ⊕ C_{n_i}: G ⊕ Ĝ with q(g, χ) = χ(g).
pub fn double_metric_group(orders: &[u64]) -> Result<MetricGroup> {
    let mut all = orders.to_vec();
    all.extend_from_slice(orders);
    let k = orders.len();
    let size: u64 = all.iter().product();
    let mut q = Vec::with_capacity(size as usize);
    let probe = MetricGroup {
        cyclic_orders: all.clone(),
        q: vec![RootOfUnity::ONE; size as usize],
    };
    for idx in 0..size as usize {
        let c = probe.coords(idx);
        let value = (0..k).fold(RootOfUnity::ONE, |acc, i| {
            acc.mul(&RootOfUnity::new(orders[i], (c[i] * c[k + i]) as i64))
        });
        q.push(value);
    }
    MetricGroup::new(all, q)
}

pub fn double_abelian(orders: &[u64]) -> Result<ModularDatum> {
    Ok(pointed(&double_metric_group(orders)?))
}

/// A 3-cocycle on ⊕ C_{n_i}: either the diagonal class Σ a_i·c_i² given by
/// `twists`, or explicit per-element restriction orders |ω_g|.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleSpec {
    pub cyclic_orders: Vec<u64>,
    pub twists: Option<Vec<u64>>,
    pub restriction_orders: Option<Vec<u64>>,
}

impl CocycleSpec {
    /// C_n with the generator of H³(C_n, C^×).
    pub fn cyclic_generator(n: u64) -> Self {
        CocycleSpec {
            cyclic_orders: vec![n],
            twists: Some(vec![1]),
            restriction_orders: None,
        }
    }

    pub fn trivial(orders: &[u64]) -> Self {
        CocycleSpec {
            cyclic_orders: orders.to_vec(),
            twists: Some(vec![0; orders.len()]),
            restriction_orders: None,
        }
    }
}

/// lcm over g of |g|·|ω_g|.
pub fn fsexp_vec_g_omega(spec: &CocycleSpec) -> Result<u64> {
    let orders = &spec.cyclic_orders;
    if orders.contains(&0) {
        return Err(Error::InvalidParameter("cyclic factor of order 0".into()));
    }
    let size: u64 = orders
        .iter()
        .try_fold(1u64, |acc, &n| acc.checked_mul(n))
        .filter(|&s| s <= 1 << 20)
        .ok_or_else(|| Error::InvalidParameter("group too large".into()))?;
    let probe = MetricGroup {
        cyclic_orders: orders.clone(),
        q: Vec::new(),
    };
    let mut out = 1u64;
    for idx in 0..size as usize {
        let g = probe.coords(idx);
        let m = g
            .iter()
            .zip(orders)
            .fold(1, |acc, (&gi, &n)| lcm(acc, n / gcd(gi, n)));
        let w = match (&spec.restriction_orders, &spec.twists) {
            (Some(r), _) => *r.get(idx).ok_or_else(|| {
                Error::InvalidParameter(format!("need {size} restriction orders"))
            })?,
            (None, Some(a)) => {
                if a.len() != orders.len() {
                    return Err(Error::InvalidParameter(
                        "one twist per cyclic factor".into(),
                    ));
                }
                // pull each c_i back along 1 ↦ g: c_i ↦ (m g_i / n_i) c
                let class = (0..orders.len()).fold(0u128, |acc, i| {
                    let k = (m as u128 * g[i] as u128 / orders[i] as u128) % m as u128;
                    (acc + a[i] as u128 % m as u128 * (k * k % m as u128)) % m as u128
                });
                m / gcd(class as u64, m)
            }
            (None, None) => {
                return Err(Error::InvalidParameter(
                    "cocycle underdetermined: supply restriction orders |ω_g|".into(),
                ))
            }
        };
        out = lcm(out, m * w);
    }
    Ok(out)
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_forms() {
        let c2 = MetricGroup::cyclic_standard(2, 1).unwrap();
        assert_eq!(c2.q(1), RootOfUnity::new(4, 1));
        let c5 = MetricGroup::cyclic_standard(5, 1).unwrap();
        assert_eq!(c5.q(2), RootOfUnity::new(5, 4));
        assert_eq!(c5.b(1, 1), RootOfUnity::new(5, 2));
    }

    #[test]
    fn rejects_non_quadratic_tables() {
        let q = vec![
            RootOfUnity::ONE,
            RootOfUnity::new(3, 1),
            RootOfUnity::new(3, 1),
        ];
        assert!(MetricGroup::new(vec![3], q).is_ok());
        let q = vec![
            RootOfUnity::ONE,
            RootOfUnity::new(3, 1),
            RootOfUnity::new(3, 2),
        ];
        assert!(MetricGroup::new(vec![3], q).is_err());
    }

    #[test]
    fn parameter_domains() {
        assert!(ising(2, 1).is_err());
        assert!(ising(1, 0).is_err());
        assert!(fibonacci(5).is_err());
        assert!(fibonacci(10).is_err());
        assert!(so5_level9(3).is_err());
        assert_eq!(fibonacci(6).unwrap(), fibonacci(1).unwrap());
    }

    #[test]
    fn fsexp_formula_small_cases() {
        assert_eq!(fsexp_vec_g_omega(&CocycleSpec::trivial(&[7])).unwrap(), 7);
        assert_eq!(
            fsexp_vec_g_omega(&CocycleSpec::cyclic_generator(8)).unwrap(),
            64
        );
        assert_eq!(
            fsexp_vec_g_omega(&CocycleSpec::trivial(&[2, 2])).unwrap(),
            2
        );
        let under = CocycleSpec {
            cyclic_orders: vec![4],
            ..Default::default()
        };
        assert!(fsexp_vec_g_omega(&under).is_err());
        let explicit = CocycleSpec {
            cyclic_orders: vec![2],
            twists: None,
            restriction_orders: Some(vec![1, 2]),
        };
        assert_eq!(fsexp_vec_g_omega(&explicit).unwrap(), 4);
    }

    #[test]
    fn product_labels_and_rank() {
        let p = deligne_product(&ising(1, 1).unwrap(), &fibonacci(1).unwrap());
        assert_eq!(p.rank(), 6);
        assert_eq!(p.labels()[0], "1⊠1");
        assert_eq!(p.fs_exponent(), 80);
    }
}
