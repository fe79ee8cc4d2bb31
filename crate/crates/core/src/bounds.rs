//! Executable bound checks: FSexp against Ndim, the orbit trace bound,
//! Siegel's trace bound, the key-object lemma and the extremal classifier.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::construct::MetricGroup;
use crate::cyclo::{rat, real_subfield_degree, Cyc, Rat, RootOfUnity};
use crate::error::{Error, Result};
use crate::galois::GaloisAction;
use crate::modular::{FusionTensor, ModularDatum};
use crate::numtheory::{lcm, prime_power};

/// Which multiple of Ndim FSexp attains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tier {
    Ndim,
    TwoNdim,
    FourNdim,
}

impl Tier {
    pub fn factor(self) -> u64 {
        match self {
            Tier::Ndim => 1,
            Tier::TwoNdim => 2,
            Tier::FourNdim => 4,
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tier::Ndim => write!(f, "Ndim"),
            Tier::TwoNdim => write!(f, "2·Ndim"),
            Tier::FourNdim => write!(f, "4·Ndim"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalClass {
    PointedCyclic,
    PointedOther,
    Fibonacci,
    IsingXIsing,
    /// Ising ⊠ a pointed category of the given dimension.
    IsingXPointed(u64),
    Unclassified,
}

impl fmt::Display for ExtremalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremalClass::PointedCyclic => write!(f, "pointed-cyclic"),
            ExtremalClass::PointedOther => write!(f, "pointed-other"),
            ExtremalClass::Fibonacci => write!(f, "fibonacci"),
            ExtremalClass::IsingXIsing => write!(f, "ising-x-ising"),
            ExtremalClass::IsingXPointed(m) => write!(f, "ising-x-pointed({m})"),
            ExtremalClass::Unclassified => write!(f, "unclassified"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub fsexp: u64,
    pub ndim: u64,
    /// The prime p when FSexp is a power of p.
    pub prime: Option<u64>,
    pub bound_holds: bool,
    pub extremal: bool,
    pub tier: Option<Tier>,
    pub extremal_class: Option<ExtremalClass>,
}

impl fmt::Display for BoundVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(p) = self.prime else {
            return write!(
                f,
                "FSexp {} is not a prime power (bound vacuous)",
                self.fsexp
            );
        };
        let factor = if p == 2 { "4·" } else { "" };
        let rel = if self.bound_holds { "≤" } else { ">" };
        write!(f, "{} {rel} {factor}{}", self.fsexp, self.ndim)?;
        if let Some(t) = self.tier {
            write!(f, ", extremal tier {t}")?;
        }
        if let Some(c) = self.extremal_class {
            write!(f, ", class {c}")?;
        }
        Ok(())
    }
}

/// FSexp ≤ Ndim for odd p, FSexp ≤ 4·Ndim for p = 2.
pub fn bound_check(md: &ModularDatum) -> Result<BoundVerdict> {
    let fsexp = md.fs_exponent();
    let ndim = md.ndim()?;
    let Some((p, _)) = prime_power(fsexp) else {
        return Ok(BoundVerdict {
            fsexp,
            ndim,
            prime: None,
            bound_holds: true,
            extremal: false,
            tier: None,
            extremal_class: None,
        });
    };
    let limit = if p == 2 { 4 * ndim } else { ndim };
    let tiers: &[Tier] = if p == 2 {
        &[Tier::Ndim, Tier::TwoNdim, Tier::FourNdim]
    } else {
        &[Tier::Ndim]
    };
    let tier = tiers.iter().copied().find(|t| fsexp == t.factor() * ndim);
    let extremal_class = tier.map(|_| extremal_classify(md));
    Ok(BoundVerdict {
        fsexp,
        ndim,
        prime: Some(p),
        bound_holds: fsexp <= limit,
        extremal: tier.is_some(),
        tier,
        extremal_class,
    })
}

/// One evaluation of dim(𝒪ᵗ_X) ≥ [Q(ζ)⁺:Q]·M(dim X) with ζ = t_{X,X}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaLine {
    pub label: String,
    pub orbit_t_dim: String,
    pub t_order: u64,
    pub real_degree: u64,
    pub m_measure: String,
    pub holds: bool,
    pub note: Option<String>,
}

impl fmt::Display for LemmaLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.note {
            return write!(f, "{}: {n}", self.label);
        }
        let rel = if self.holds { "≥" } else { "<" };
        write!(
            f,
            "{}: dim(O^t) = {} {rel} {}·M = {}·{} (ord t = {})",
            self.label,
            self.orbit_t_dim,
            self.real_degree,
            self.real_degree,
            self.m_measure,
            self.t_order
        )
    }
}

pub fn lemma_orbit_bound(md: &ModularDatum, x: usize) -> Result<LemmaLine> {
    let action = GaloisAction::new(md)?;
    let (gamma, _) = md.normalized_t_order()?;
    lemma_line(md, &action, &gamma, x)
}

/// The lemma for every simple; a single skipped line if dim(𝒞) ∉ Z.
pub fn lemma_sweep(md: &ModularDatum) -> Result<Vec<LemmaLine>> {
    if md.global_dim().as_integer().is_none() {
        return Ok(vec![skipped(md, 0)]);
    }
    let action = GaloisAction::new(md)?;
    let (gamma, _) = md.normalized_t_order()?;
    (0..md.rank())
        .map(|x| lemma_line(md, &action, &gamma, x))
        .collect()
}

fn skipped(md: &ModularDatum, x: usize) -> LemmaLine {
    LemmaLine {
        label: md.labels()[x].clone(),
        orbit_t_dim: String::new(),
        t_order: 0,
        real_degree: 0,
        m_measure: String::new(),
        holds: true,
        note: Some(format!(
            "skipped: dim(C) = {} is not an integer",
            md.global_dim()
        )),
    }
}

fn lemma_line(
    md: &ModularDatum,
    action: &GaloisAction<'_>,
    gamma: &RootOfUnity,
    x: usize,
) -> Result<LemmaLine> {
    if md.global_dim().as_integer().is_none() {
        return Ok(skipped(md, x));
    }
    let (_, lhs) = action.orbit_t(x)?;
    let t_order = md.t()[x].div(gamma).order();
    let real_degree = real_subfield_degree(t_order);
    let m = md.dims()[x].m_measure()?;
    let rhs = Cyc::from_rat(&m * Rat::from_integer(real_degree.into()));
    let holds = lhs.real_cmp(&rhs)? != Ordering::Less;
    Ok(LemmaLine {
        label: md.labels()[x].clone(),
        orbit_t_dim: lhs.to_string(),
        t_order,
        real_degree,
        m_measure: m.to_string(),
        holds,
        note: None,
    })
}

/// A simple X with FSexp | ord(t_{X,X}); requires FSexp to be a prime power.
pub fn key_object(md: &ModularDatum) -> Result<Option<usize>> {
    let fs = md.fs_exponent();
    if fs > 1 && prime_power(fs).is_none() {
        return Err(Error::InvalidParameter(format!(
            "FSexp {fs} is not a prime power"
        )));
    }
    let (gamma, _) = md.normalized_t_order()?;
    Ok(md
        .normalized_t(&gamma)
        .iter()
        .position(|t| t.order() % fs == 0))
}

/// Tr(a) ≥ (3/2)·[Q(a):Q] unless a = 1, for totally positive `a`.
pub fn siegel_check(a: &Cyc) -> Result<bool> {
    if !a.is_totally_positive()? {
        return Err(Error::NotTotallyPositive(a.to_string()));
    }
    if a.is_one() {
        return Ok(true);
    }
    let (tr, _) = a.trace_norm();
    Ok(tr >= rat(3, 2) * Rat::from_integer(a.degree().into()))
}

/// Match the fusion rules against the extremal families.
pub fn extremal_classify(md: &ModularDatum) -> ExtremalClass {
    if let Some(class) = pointed_class(md) {
        return class;
    }
    let Ok(ft) = md.verlinde_fusion() else {
        return ExtremalClass::Unclassified;
    };
    let r = ft.rank();
    if r == 2 && isomorphic(&ft, &fibonacci_rules()) {
        return ExtremalClass::Fibonacci;
    }
    let ising = ising_rules();
    if r == 9 && isomorphic(&ft, &kronecker(&ising, &ising)) {
        return ExtremalClass::IsingXIsing;
    }
    if r % 3 == 0 && [1, 2, 4, 8].contains(&(r / 3)) {
        let m = (r / 3) as u64;
        for orders in abelian_groups(m) {
            if isomorphic(&ft, &kronecker(&ising, &group_rules(&orders))) {
                return ExtremalClass::IsingXPointed(m);
            }
        }
    }
    ExtremalClass::Unclassified
}

// X is invertible iff every S[X][Y]/S[0][Y] is a root of unity: these are
// the eigenvalues of N_X, and a normal nonnegative integer matrix with
// unimodular spectrum is a permutation. Avoids Verlinde on large groups.
fn pointed_class(md: &ModularDatum) -> Option<ExtremalClass> {
    let r = md.rank();
    let s = md.s();
    let mut cyclic = false;
    for x in 0..r {
        let mut order = 1;
        for y in 0..r {
            let ratio = s[x][y].checked_div(&s[0][y]).ok()?;
            order = lcm(order, RootOfUnity::from_cyc(&ratio)?.order());
        }
        cyclic |= order == r as u64;
    }
    Some(if cyclic {
        ExtremalClass::PointedCyclic
    } else {
        ExtremalClass::PointedOther
    })
}

fn fibonacci_rules() -> FusionTensor {
    FusionTensor::from_fn(2, |x, y, z| match (x, y) {
        (0, _) => u32::from(y == z),
        (_, 0) => u32::from(x == z),
        _ => 1,
    })
}

fn ising_rules() -> FusionTensor {
    // 0 = 1, 1 = δ, 2 = X
    FusionTensor::from_fn(3, |x, y, z| match (x, y) {
        (0, _) => u32::from(y == z),
        (_, 0) => u32::from(x == z),
        (1, 1) => u32::from(z == 0),
        (1, 2) | (2, 1) => u32::from(z == 2),
        _ => u32::from(z != 2),
    })
}

fn group_rules(orders: &[u64]) -> FusionTensor {
    let size = orders.iter().product::<u64>() as usize;
    let probe =
        MetricGroup::new(orders.to_vec(), vec![RootOfUnity::ONE; size]).expect("trivial form");
    FusionTensor::from_fn(size, |x, y, z| u32::from(probe.add(x, y) == z))
}

fn abelian_groups(m: u64) -> Vec<Vec<u64>> {
    match m {
        1 => vec![vec![]],
        2 => vec![vec![2]],
        4 => vec![vec![4], vec![2, 2]],
        8 => vec![vec![8], vec![4, 2], vec![2, 2, 2]],
        _ => Vec::new(),
    }
}

fn kronecker(a: &FusionTensor, b: &FusionTensor) -> FusionTensor {
    let rb = b.rank();
    FusionTensor::from_fn(a.rank() * rb, |x, y, z| {
        a.get(x / rb, y / rb, z / rb) * b.get(x % rb, y % rb, z % rb)
    })
}

fn signature(ft: &FusionTensor, x: usize) -> (u32, u32, u32) {
    let r = ft.rank();
    let total = (0..r)
        .flat_map(|y| (0..r).map(move |z| (y, z)))
        .map(|(y, z)| ft.get(x, y, z))
        .sum();
    let square = (0..r).map(|z| ft.get(x, x, z)).sum();
    (total, square, ft.get(x, x, 0))
}

/// Fusion-ring isomorphism fixing the unit, by backtracking.
pub fn isomorphic(a: &FusionTensor, b: &FusionTensor) -> bool {
    let r = a.rank();
    if r != b.rank() {
        return false;
    }
    let sa: Vec<_> = (0..r).map(|x| signature(a, x)).collect();
    let sb: Vec<_> = (0..r).map(|x| signature(b, x)).collect();
    let mut map = vec![usize::MAX; r];
    let mut used = vec![false; r];
    map[0] = 0;
    used[0] = true;
    fn extend(
        i: usize,
        a: &FusionTensor,
        b: &FusionTensor,
        sa: &[(u32, u32, u32)],
        sb: &[(u32, u32, u32)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let r = a.rank();
        if i == r {
            return true;
        }
        for j in 0..r {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            map[i] = j;
            used[j] = true;
            let ok = (0..=i).all(|p| {
                (0..=i).all(|q| {
                    (0..=i).all(|s| {
                        (p != i && q != i && s != i)
                            || a.get(p, q, s) == b.get(map[p], map[q], map[s])
                    })
                })
            });
            if ok && extend(i + 1, a, b, sa, sb, map, used) {
                return true;
            }
            used[j] = false;
            map[i] = usize::MAX;
        }
        false
    }
    sa[0] == sb[0] && extend(1, a, b, &sa, &sb, &mut map, &mut used)
}
