//! Modular data `(S, T)` with `T[X] = θ_X⁻¹`, its verification and the
//! invariants derived from it.

mod fusion;
mod report;

use std::sync::OnceLock;

use num_traits::{Signed, ToPrimitive};

use crate::cyclo::{wire::MAX_ORDER, Cyc, RootOfUnity};
use crate::error::{Error, Result};
use crate::numtheory::{checked_lcm, lcm};

pub use fusion::FusionTensor;
pub use report::{Check, VerificationReport};

/// Which twist power a Gauss sum uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussSign {
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct FpDims {
    pub fpdims: Vec<f64>,
    pub global: f64,
    pub pseudounitary: bool,
}

#[derive(Clone, Debug, Default)]
struct Cache {
    dims: OnceLock<Vec<Cyc>>,
    global_dim: OnceLock<Cyc>,
    fusion: OnceLock<Result<FusionTensor>>,
}

#[derive(Clone, Debug)]
pub struct ModularDatum {
    labels: Vec<String>,
    s: Vec<Vec<Cyc>>,
    t: Vec<RootOfUnity>,
    cache: Cache,
}

impl PartialEq for ModularDatum {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.s == other.s && self.t == other.t
    }
}

impl ModularDatum {
    /// Build with structural validation: shape, symmetry, unit
    /// normalisation and containment of S in Q(ζ_N), N the order of T.
    pub fn new(labels: Vec<String>, s: Vec<Vec<Cyc>>, t: Vec<RootOfUnity>) -> Result<Self> {
        let r = labels.len();
        if r == 0 {
            return Err(Error::Parse("rank 0 datum".into()));
        }
        if s.len() != r || t.len() != r || s.iter().any(|row| row.len() != r) {
            return Err(Error::Parse(format!(
                "shape mismatch: {r} labels, S is {}x{}, T has {} entries",
                s.len(),
                s.first().map_or(0, Vec::len),
                t.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Parse(format!("duplicate label {dup:?}")));
        }
        if !s[0][0].is_one() {
            return Err(Error::Parse(format!(
                "unit normalization: S[0][0] = {}",
                s[0][0]
            )));
        }
        if !t[0].is_one() {
            return Err(Error::Parse(format!("unit normalization: T[0] = {}", t[0])));
        }
        let n = t
            .iter()
            .try_fold(1u64, |acc, z| {
                checked_lcm(acc, z.order()).filter(|&m| m <= MAX_ORDER)
            })
            .ok_or_else(|| {
                Error::Parse(format!("T entries have common order above {MAX_ORDER}"))
            })?;
        // Q(ζ_n) = Q(ζ_2n) for odd n
        let field = if n % 2 == 1 { 2 * n } else { n };
        let reduced: Vec<Vec<Cyc>> = s
            .iter()
            .map(|row| row.iter().map(Cyc::reduce_conductor).collect())
            .collect();
        for (x, row) in reduced.iter().enumerate() {
            for (y, a) in row.iter().enumerate() {
                if field % a.conductor() != 0 {
                    return Err(Error::Parse(format!(
                        "S[{x}][{y}] = {a} is not in Q(ζ_{n})"
                    )));
                }
            }
        }
        // compared in reduced form, so every lift stays inside Q(ζ_field)
        for x in 0..r {
            for y in x + 1..r {
                if reduced[x][y] != reduced[y][x] {
                    return Err(Error::Parse(format!("S is not symmetric at ({x}, {y})")));
                }
            }
        }
        Ok(Self::new_unchecked(labels, s, t))
    }

    pub(crate) fn new_unchecked(
        labels: Vec<String>,
        s: Vec<Vec<Cyc>>,
        t: Vec<RootOfUnity>,
    ) -> Self {
        ModularDatum {
            labels,
            s,
            t,
            cache: Cache::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn s(&self) -> &[Vec<Cyc>] {
        &self.s
    }

    pub fn t(&self) -> &[RootOfUnity] {
        &self.t
    }

    /// θ_X = T[X]⁻¹.
    pub fn theta(&self, x: usize) -> RootOfUnity {
        self.t[x].inv()
    }

    /// dim(X) = S[0][X].
    pub fn dims(&self) -> &[Cyc] {
        self.cache.dims.get_or_init(|| self.s[0].clone())
    }

    /// dim(𝒞) = Σ dim(X)².
    pub fn global_dim(&self) -> &Cyc {
        self.cache
            .global_dim
            .get_or_init(|| self.dims().iter().fold(Cyc::zero(), |acc, d| acc + d * d))
    }

    /// Least common multiple of the orders of the T entries.
    pub fn fs_exponent(&self) -> u64 {
        self.t.iter().fold(1, |acc, z| lcm(acc, z.order()))
    }

    /// Norm of dim(𝒞) down to Q; a positive integer for genuine data.
    pub fn ndim(&self) -> Result<u64> {
        let (_, norm) = self.global_dim().trace_norm();
        if !norm.is_integer() || !norm.is_positive() {
            return Err(Error::Internal(format!(
                "norm of dim(C) is {norm}, not a positive integer"
            )));
        }
        norm.to_integer()
            .to_u64()
            .ok_or_else(|| Error::Internal(format!("Ndim {norm} exceeds u64")))
    }

    /// τ_m^± = Σ dim(X)² θ_X^{±m}.
    pub fn gauss_sum(&self, m: i64, sign: GaussSign) -> Cyc {
        let e = match sign {
            GaussSign::Plus => m,
            GaussSign::Minus => -m,
        };
        self.dims()
            .iter()
            .enumerate()
            .fold(Cyc::zero(), |acc, (x, d)| {
                acc + &(d * d) * &self.theta(x).pow(e).to_cyc()
            })
    }

    /// ξ = (τ₁⁺)² / dim(𝒞).
    pub fn anomaly(&self) -> Result<RootOfUnity> {
        let tau = self.gauss_sum(1, GaussSign::Plus);
        let xi = (&tau * &tau).checked_div(self.global_dim())?;
        RootOfUnity::from_cyc(&xi)
            .ok_or_else(|| Error::NotModular(format!("anomaly {xi} is not a root of unity")))
    }

    /// The normalising root γ (γ⁶ = ξ⁻¹, γ³·√dim(𝒞) = τ₁⁻) of least order,
    /// then least exponent, and n_t = lcm ord(T[X]·γ⁻¹).
    pub fn normalized_t_order(&self) -> Result<(RootOfUnity, u64)> {
        let xi = self.anomaly()?;
        let tau_minus = self.gauss_sum(1, GaussSign::Minus);
        let d = self.global_dim();
        let m = xi.order() * 6;
        let base = -(xi.exponent() as i64);
        let mut valid = Vec::new();
        for j in 0..6 {
            let g = RootOfUnity::new(m, base + (xi.order() * j) as i64);
            if cube_times_sqrt_matches(&g.pow(3).to_cyc(), d, &tau_minus)? {
                valid.push(g);
            }
        }
        let gamma = valid
            .into_iter()
            .min()
            .ok_or_else(|| Error::NotModular("no admissible normalisation root γ".into()))?;
        let n_t = self
            .t
            .iter()
            .fold(1, |acc, z| lcm(acc, z.div(&gamma).order()));
        let fs = self.fs_exponent();
        if n_t % fs != 0 || !(12 * fs).is_multiple_of(n_t) {
            return Err(Error::Internal(format!(
                "n_t = {n_t} violates {fs} | n_t | {}",
                12 * fs
            )));
        }
        Ok((gamma, n_t))
    }

    /// t_{X,X} = T[X]·γ⁻¹ for a given γ.
    pub fn normalized_t(&self, gamma: &RootOfUnity) -> Vec<RootOfUnity> {
        self.t.iter().map(|z| z.div(gamma)).collect()
    }

    /// Fusion rules by the Verlinde formula, with an integrality check on
    /// every coefficient.
    pub fn verlinde_fusion(&self) -> Result<FusionTensor> {
        self.cache
            .fusion
            .get_or_init(|| self.compute_fusion())
            .clone()
    }

    fn compute_fusion(&self) -> Result<FusionTensor> {
        let r = self.rank();
        let d = self.global_dim();
        let weight: Vec<Cyc> = (0..r)
            .map(|k| (d * &self.s[0][k]).inv())
            .collect::<Result<_>>()
            .map_err(|_| Error::Degenerate("S has a zero entry in the unit row".into()))?;
        let conj: Vec<Vec<Cyc>> = self
            .s
            .iter()
            .map(|row| row.iter().map(Cyc::conj).collect())
            .collect();
        let mut n = vec![0u32; r * r * r];
        for x in 0..r {
            for y in x..r {
                let a: Vec<Cyc> = (0..r)
                    .map(|k| &(&self.s[x][k] * &self.s[y][k]) * &weight[k])
                    .collect();
                for z in 0..r {
                    let v = (0..r).fold(Cyc::zero(), |acc, k| acc + &a[k] * &conj[z][k]);
                    let val = v
                        .as_rational()
                        .filter(|q| q.is_integer() && !q.is_negative())
                        .and_then(|q| q.to_integer().to_u32())
                        .ok_or_else(|| {
                            Error::NotModular(format!(
                                "Verlinde coefficient N[{}][{}][{}] = {v} is not a nonnegative integer",
                                self.labels[x], self.labels[y], self.labels[z]
                            ))
                        })?;
                    n[(x * r + y) * r + z] = val;
                    n[(y * r + x) * r + z] = val;
                }
            }
        }
        Ok(FusionTensor::from_fn(r, |x, y, z| n[(x * r + y) * r + z]))
    }

    /// Permutation C with S²/dim(𝒞) = the permutation matrix of C.
    pub fn charge_conjugation(&self) -> Option<Vec<usize>> {
        let r = self.rank();
        let d = self.global_dim();
        let mut perm = Vec::with_capacity(r);
        for x in 0..r {
            let mut hit = None;
            for y in 0..r {
                let v = (0..r).fold(Cyc::zero(), |acc, k| acc + &self.s[x][k] * &self.s[k][y]);
                if v == *d {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some(y);
                } else if !v.is_zero() {
                    return None;
                }
            }
            perm.push(hit?);
        }
        Some(perm)
    }

    /// Müger criterion: S[X][Y] = dim(X)·dim(Y).
    pub fn centralizes(&self, x: usize, y: usize) -> bool {
        self.s[x][y] == &self.dims()[x] * &self.dims()[y]
    }

    pub fn symmetric_center(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|&x| (0..self.rank()).all(|y| self.centralizes(x, y)))
            .collect()
    }

    /// Frobenius-Perron dimensions, FPdim(𝒞) and the pseudounitarity verdict.
    pub fn fpdim_pseudounitary(&self) -> Result<FpDims> {
        let fpdims = self.verlinde_fusion()?.fpdims()?;
        let global: f64 = fpdims.iter().map(|d| d * d).sum();
        let (dim, _) = self.global_dim().to_c64();
        Ok(FpDims {
            fpdims,
            global,
            pseudounitary: (global - dim).abs() < 1e-9,
        })
    }

    pub fn verify(&self) -> VerificationReport {
        report::verify(self)
    }
}

// Decide g³·√d = τ for g³ a root of unity. The two sides are either equal or
// differ by a factor -1, so the discrepancy has modulus 0 or 2√d ≥ 2 and
// interval refinement always terminates.
fn cube_times_sqrt_matches(g3: &Cyc, d: &Cyc, tau: &Cyc) -> Result<bool> {
    let mut bits = 64;
    loop {
        let dz = d.embed(bits);
        let root = dz
            .re
            .sqrt()
            .ok_or_else(|| Error::NotModular(format!("dim(C) = {d} is not positive")))?;
        let lhs = g3.embed(bits).scale(&root);
        let diff = lhs.sub(&tau.embed(bits));
        if diff.re.within(1) && diff.im.within(1) {
            return Ok(true);
        }
        if diff.re.sign().is_some() || diff.im.sign().is_some() {
            return Ok(false);
        }
        bits *= 2;
        if bits > 1 << 16 {
            return Err(Error::Numerical("γ certification did not terminate".into()));
        }
    }
}

#[cfg(test)]
mod tests;
