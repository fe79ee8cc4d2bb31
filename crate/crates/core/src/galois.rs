//! Galois action on modular data: the permutation σ̂, orbits, conjugate
//! categories and the product over conjugates of dim(𝒞).

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use crate::construct::deligne_product;
use crate::cyclo::Cyc;
use crate::error::{Error, Result};
use crate::modular::{ModularDatum, VerificationReport};
use crate::numtheory::{gcd, lcm, mul_mod, residue, unit_generators, units};

/// σ̂ for the automorphism ζ_N ↦ ζ_N^k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisPermutation {
    pub k: u64,
    pub perm: Vec<usize>,
}

/// lcm(12·FSexp, conductors of all S entries).
pub fn working_conductor(md: &ModularDatum) -> u64 {
    md.s()
        .iter()
        .flatten()
        .fold(12 * md.fs_exponent(), |acc, a| lcm(acc, a.conductor()))
}

/// Precomputed ratio columns S[X][Y]/S[0][Y] with a per-k memo of σ̂.
pub struct GaloisAction<'a> {
    md: &'a ModularDatum,
    n: u64,
    // conductor that the ratios actually need; σ̂_k depends on k mod c only
    c: u64,
    cols: Vec<Vec<Cyc>>,
    memo: Mutex<HashMap<u64, Result<Vec<usize>>>>,
}

impl<'a> GaloisAction<'a> {
    pub fn new(md: &'a ModularDatum) -> Result<Self> {
        let r = md.rank();
        let s = md.s();
        let mut cols = Vec::with_capacity(r);
        for y in 0..r {
            let inv = s[0][y]
                .inv()
                .map_err(|_| Error::Degenerate(format!("dim({}) = 0", md.labels()[y])))?;
            cols.push((0..r).map(|x| &s[x][y] * &inv).collect::<Vec<_>>());
        }
        let c = cols
            .iter()
            .flatten()
            .fold(1, |acc, a| lcm(acc, a.conductor()));
        Ok(GaloisAction {
            md,
            n: working_conductor(md),
            c,
            cols,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn permutation(&self, k: i64) -> Result<GaloisPermutation> {
        let kk = residue(k, self.n);
        if gcd(kk, self.n) != 1 {
            return Err(Error::NotCoprime { k, n: self.n });
        }
        let key = kk % self.c;
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone().map(|perm| GaloisPermutation { k: kk, perm });
        }
        let res = self.match_columns(key);
        self.memo.lock().unwrap().insert(key, res.clone());
        res.map(|perm| GaloisPermutation { k: kk, perm })
    }

    fn match_columns(&self, k: u64) -> Result<Vec<usize>> {
        let r = self.md.rank();
        let mut perm = Vec::with_capacity(r);
        let mut used = vec![false; r];
        for y in 0..r {
            let image: Vec<Cyc> = self.cols[y]
                .iter()
                .map(|a| a.galois(k as i64))
                .collect::<Result<_>>()?;
            let hits: Vec<usize> = (0..r).filter(|&z| self.cols[z] == image).collect();
            match hits.as_slice() {
                [] => {
                    return Err(Error::NotModular(format!(
                        "no column matches the conjugate of column {} under k = {k}",
                        self.md.labels()[y]
                    )))
                }
                [z] if !used[*z] => {
                    used[*z] = true;
                    perm.push(*z);
                }
                _ => {
                    return Err(Error::Degenerate(format!(
                        "Galois permutation for k = {k} is not unique at column {}",
                        self.md.labels()[y]
                    )))
                }
            }
        }
        Ok(perm)
    }

    /// 𝒪_X.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>> {
        let mut out = BTreeSet::new();
        for k in units(self.n) {
            out.insert(self.permutation(k as i64)?.perm[x]);
        }
        Ok(out.into_iter().collect())
    }

    /// 𝒪ᵗ_X = {σ̂_{k²}(X)} and dim(𝒪ᵗ_X) = Σ dim(Y)² over it.
    pub fn orbit_t(&self, x: usize) -> Result<(Vec<usize>, Cyc)> {
        let squares: BTreeSet<u64> = units(self.n)
            .into_iter()
            .map(|k| mul_mod(k, k, self.n))
            .collect();
        let mut out = BTreeSet::new();
        for k in squares {
            out.insert(self.permutation(k as i64)?.perm[x]);
        }
        let dims = self.md.dims();
        let dim = out
            .iter()
            .fold(Cyc::zero(), |acc, &y| acc + &dims[y] * &dims[y]);
        Ok((out.into_iter().collect(), dim))
    }

    /// The Galois orbits as a partition of the labels.
    pub fn orbits(&self) -> Result<Vec<Vec<usize>>> {
        let mut seen = vec![false; self.md.rank()];
        let mut out = Vec::new();
        for x in 0..self.md.rank() {
            if !seen[x] {
                let o = self.orbit(x)?;
                o.iter().for_each(|&y| seen[y] = true);
                out.push(o);
            }
        }
        Ok(out)
    }
}

pub fn galois_permutation(md: &ModularDatum, k: i64) -> Result<GaloisPermutation> {
    GaloisAction::new(md)?.permutation(k)
}

pub fn orbit(md: &ModularDatum, x: usize) -> Result<Vec<usize>> {
    GaloisAction::new(md)?.orbit(x)
}

pub fn orbit_t(md: &ModularDatum, x: usize) -> Result<(Vec<usize>, Cyc)> {
    GaloisAction::new(md)?.orbit_t(x)
}

/// 𝒞^σ: σ applied to every S entry and every T entry.
pub fn conjugate_category(md: &ModularDatum, k: i64) -> Result<ModularDatum> {
    let conj = conjugate_unverified(md, k)?;
    let rep = conj.verify();
    if !rep.all_passed() {
        return Err(Error::Internal(format!(
            "conjugate by k = {k} fails verification:\n{rep}"
        )));
    }
    Ok(conj)
}

fn conjugate_unverified(md: &ModularDatum, k: i64) -> Result<ModularDatum> {
    let n = working_conductor(md);
    if gcd(residue(k, n), n) != 1 {
        return Err(Error::NotCoprime { k, n });
    }
    let s = md
        .s()
        .iter()
        .map(|row| row.iter().map(|a| a.galois(k)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let t = md.t().iter().map(|z| z.galois(k)).collect();
    ModularDatum::new(md.labels().to_vec(), s, t)
}

/// 𝒞̄: the product of one conjugate per coset of the stabilizer of dim(𝒞).
pub fn bar_category(md: &ModularDatum) -> Result<ModularDatum> {
    let n = working_conductor(md);
    let (c, reps) = md.global_dim().galois_coset_reps();
    let mut out: Option<ModularDatum> = None;
    for k in reps {
        // lift k mod c to a unit mod n
        let lifted = (0..n)
            .map(|t| k + c * t)
            .find(|&v| gcd(v, n) == 1)
            .expect("units lift along Z/n -> Z/c");
        let conj = conjugate_category(md, lifted as i64)?;
        out = Some(match out {
            None => conj,
            Some(acc) => deligne_product(&acc, &conj),
        });
    }
    let bar = out.expect("at least one coset");
    let ndim = md.ndim()?;
    if *bar.global_dim() != Cyc::from_int(ndim as i64) {
        return Err(Error::Internal(format!(
            "dim of the bar category is {}, not {ndim}",
            bar.global_dim()
        )));
    }
    if bar.fs_exponent() != md.fs_exponent() {
        return Err(Error::Internal("bar category changes FSexp".into()));
    }
    Ok(bar)
}

/// σ̂ existence and homomorphism, dim(σ̂X)² = (dim𝒞/σ(dim𝒞))·σ(dim(X)²),
/// σ²(t_X) = t_{σ̂X}, and modularity of every conjugate category.
pub fn verify_galois_identities(md: &ModularDatum) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let action = match GaloisAction::new(md) {
        Ok(a) => a,
        Err(e) => {
            rep.push("Galois permutation exists", Err(e.to_string()));
            return rep;
        }
    };
    let n = action.conductor();
    let ks = units(n);
    let perms: Result<Vec<GaloisPermutation>> =
        ks.iter().map(|&k| action.permutation(k as i64)).collect();
    let perms = match perms {
        Ok(p) => {
            rep.push("Galois permutation exists", Ok(()));
            p
        }
        Err(e) => {
            rep.push("Galois permutation exists", Err(e.to_string()));
            return rep;
        }
    };
    let by_k: HashMap<u64, &GaloisPermutation> = perms.iter().map(|p| (p.k, p)).collect();

    rep.push("k -> Galois permutation is a homomorphism", {
        let mut out = Ok(());
        'outer: for p in &perms {
            for g in unit_generators(n) {
                let lhs = &by_k[&mul_mod(p.k, g, n)].perm;
                let q = &by_k[&g].perm;
                if (0..md.rank()).any(|x| lhs[x] != p.perm[q[x]]) {
                    out = Err(format!("fails for k = {}, generator {g}", p.k));
                    break 'outer;
                }
            }
        }
        out
    });

    rep.push("dim identity under Galois permutation", {
        let dims = md.dims();
        let d = md.global_dim();
        let mut out = Ok(());
        'outer: for p in &perms {
            let k = p.k as i64;
            let ratio = match d.galois(k).and_then(|sd| d.checked_div(&sd)) {
                Ok(v) => v,
                Err(e) => {
                    out = Err(e.to_string());
                    break;
                }
            };
            for x in 0..md.rank() {
                let y = p.perm[x];
                let lhs = &dims[y] * &dims[y];
                let rhs = &ratio * &(&dims[x] * &dims[x]).galois(k).expect("k is a unit");
                if lhs != rhs {
                    out = Err(format!("k = {k}, X = {}", md.labels()[x]));
                    break 'outer;
                }
            }
        }
        out
    });

    rep.push(
        "square-Galois conjugacy of t",
        match md.normalized_t_order() {
            Ok((gamma, _)) => {
                let t = md.normalized_t(&gamma);
                let mut out = Ok(());
                'outer: for p in &perms {
                    let k2 = (p.k as i64) * (p.k as i64);
                    for x in 0..md.rank() {
                        if t[x].pow(k2) != t[p.perm[x]] {
                            out = Err(format!(
                                "k = {}, X = {}: t^(k^2) = {}, t(perm X) = {}",
                                p.k,
                                md.labels()[x],
                                t[x].pow(k2),
                                t[p.perm[x]]
                            ));
                            break 'outer;
                        }
                    }
                }
                out
            }
            Err(e) => Err(e.to_string()),
        },
    );

    rep.push("conjugate categories verify with the same FSexp", {
        // the data only see k modulo their own conductor
        let c = md
            .s()
            .iter()
            .flatten()
            .fold(md.fs_exponent(), |acc, a| lcm(acc, a.conductor()));
        let mut done = BTreeSet::new();
        let mut out = Ok(());
        for &k in &ks {
            if !done.insert(k % c) {
                continue;
            }
            match conjugate_category(md, k as i64) {
                Ok(conj) if conj.fs_exponent() == md.fs_exponent() => {}
                Ok(_) => {
                    out = Err(format!("k = {k} changes FSexp"));
                    break;
                }
                Err(e) => {
                    out = Err(e.to_string());
                    break;
                }
            }
        }
        out
    });
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{fibonacci, ising, pointed, so5_level9, trivial, MetricGroup};

    #[test]
    fn identity_for_k_one() {
        let md = so5_level9(1).unwrap();
        assert_eq!(
            galois_permutation(&md, 1).unwrap().perm,
            (0..6).collect::<Vec<_>>()
        );
    }

    #[test]
    fn fibonacci_swaps_under_sqrt5_flip() {
        let md = fibonacci(1).unwrap();
        // k = 2 sends √5 to -√5
        assert_eq!(galois_permutation(&md, 7).unwrap().perm, vec![1, 0]);
        assert_eq!(orbit(&md, 1).unwrap(), vec![0, 1]);
        let conj = conjugate_category(&md, 7).unwrap();
        assert_eq!(conj.dims()[1], Cyc::from_int(1) - &md.dims()[1]);
        let bar = bar_category(&md).unwrap();
        assert_eq!(bar.rank(), 4);
        assert_eq!(*bar.global_dim(), Cyc::from_int(5));
    }

    #[test]
    fn so5_permutation_matches_brute_force() {
        let md = so5_level9(1).unwrap();
        // 11 acts as ζ₉ ↦ ζ₉² and is a unit mod the working conductor 108
        let p = galois_permutation(&md, 11).unwrap().perm;
        assert!(galois_permutation(&md, 2).is_err());
        let s = md.s();
        for x in 0..6 {
            for y in 0..6 {
                let lhs = s[x][y].checked_div(&s[0][y]).unwrap().galois(2).unwrap();
                let rhs = s[x][p[y]].checked_div(&s[0][p[y]]).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn identities_hold_on_examples() {
        let samples = [
            ising(5, -1).unwrap(),
            fibonacci(3).unwrap(),
            so5_level9(4).unwrap(),
            pointed(&MetricGroup::cyclic_standard(5, 2).unwrap()),
            trivial(),
        ];
        for md in &samples {
            let rep = verify_galois_identities(md);
            assert!(rep.all_passed(), "{rep}");
        }
    }

    #[test]
    fn orbit_t_inside_orbit_and_partition() {
        let md = so5_level9(2).unwrap();
        let action = GaloisAction::new(&md).unwrap();
        let orbits = action.orbits().unwrap();
        assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), 6);
        for x in 0..6 {
            let o = action.orbit(x).unwrap();
            let (ot, _) = action.orbit_t(x).unwrap();
            assert!(ot.iter().all(|y| o.contains(y)));
        }
        assert_eq!(
            bar_category(&ising(1, 1).unwrap()).unwrap(),
            ising(1, 1).unwrap()
        );
    }
}
