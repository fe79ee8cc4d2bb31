//! Brute-force oracle over dense polynomials mod x^n - 1 with its own Φ_n
//! and explicit conjugates. Shared by the core oracle test and the
//! acceptance suite.

#![allow(dead_code)]

use std::collections::HashMap;

use mdtk::cyclo::rat;
use mdtk::{Cyc, Rat};
use num_traits::{One, Zero};
use proptest::prelude::*;

pub type Poly = Vec<Rat>;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Quotient and remainder by a monic divisor.
pub fn poly_divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = b.len() - 1;
    let mut r = a.clone();
    if r.len() <= db {
        r.resize(db.max(1), Rat::zero());
        return (vec![Rat::zero()], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] -= &c * bj;
        }
    }
    r.truncate(db);
    (q, r)
}

/// Φ_n as (x^n - 1) / Π_{d | n, d < n} Φ_d.
pub fn cyclotomic(n: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![Rat::zero(); n as usize + 1];
    p[0] = -Rat::one();
    p[n as usize] = Rat::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic(d, memo);
            let (q, r) = poly_divmod(&p, &phi_d);
            assert!(r.iter().all(Zero::is_zero));
            p = q;
        }
    }
    memo.insert(n, p.clone());
    p
}

pub struct Field {
    pub n: u64,
    pub phi: Poly,
}

impl Field {
    pub fn new(n: u64) -> Self {
        Field {
            n,
            phi: cyclotomic(n, &mut HashMap::new()),
        }
    }

    pub fn reduce(&self, dense: &Poly) -> Poly {
        poly_divmod(dense, &self.phi).1
    }

    /// ζ ↦ ζ^k on a dense vector mod x^n - 1, then reduced.
    pub fn conjugate(&self, dense: &Poly, k: u64) -> Poly {
        let n = self.n as usize;
        let mut out = vec![Rat::zero(); n];
        for (i, c) in dense.iter().enumerate() {
            out[(i * k as usize) % n] += c;
        }
        self.reduce(&out)
    }

    pub fn distinct_conjugates(&self, dense: &Poly) -> Vec<Poly> {
        let mut seen: Vec<Poly> = Vec::new();
        for k in 1..=self.n {
            if gcd(k, self.n) == 1 {
                let c = self.conjugate(dense, k);
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
        }
        seen
    }

    pub fn rational(&self, reduced: &Poly) -> Rat {
        assert!(
            reduced.iter().skip(1).all(Zero::is_zero),
            "not rational: {reduced:?}"
        );
        reduced[0].clone()
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&poly_mul(a, b))
    }
}

pub struct OracleValues {
    pub reduced: Poly,
    pub degree: u64,
    pub trace: Rat,
    pub norm: Rat,
    pub conjugates: Vec<Poly>,
}

pub fn oracle(f: &Field, dense: &Poly) -> OracleValues {
    let conjugates = f.distinct_conjugates(dense);
    let deg = f.phi.len() - 1;
    let mut sum = vec![Rat::zero(); deg.max(1)];
    let mut prod = vec![Rat::zero(); deg.max(1)];
    prod[0] = Rat::one();
    for c in &conjugates {
        for (s, x) in sum.iter_mut().zip(c) {
            *s += x;
        }
        prod = f.mul(&prod, c);
    }
    OracleValues {
        reduced: f.reduce(dense),
        degree: conjugates.len() as u64,
        trace: f.rational(&sum),
        norm: f.rational(&prod),
        conjugates,
    }
}

pub fn to_cyc(n: u64, dense: &Poly) -> Cyc {
    Cyc::from_terms(
        n,
        dense.iter().enumerate().map(|(i, c)| (i as u64, c.clone())),
    )
}

pub fn padded(a: &Cyc, n: u64, len: usize) -> Poly {
    let mut v = a.lift(n).coeffs();
    v.resize(len, Rat::zero());
    v
}

pub fn sample() -> impl Strategy<Value = (u64, Poly)> {
    (1u64..=60).prop_flat_map(|n| {
        let term = (0..n, -4i64..=4, 1i64..=3);
        (Just(n), prop::collection::vec(term, 1..=4)).prop_map(|(n, terms)| {
            let mut dense = vec![Rat::zero(); n as usize];
            for (e, num, den) in terms {
                dense[e as usize] += rat(num, den);
            }
            (n, dense)
        })
    })
}

/// Compare degree, trace, norm, conjugates and M(a + ā) with the oracle.
pub fn check_sample(n: u64, dense: &Poly) -> Result<(), String> {
    let f = Field::new(n);
    let a = to_cyc(n, dense);
    let o = oracle(&f, dense);
    let width = o.reduced.len();
    let fail = |what: &str| Err(format!("{what} differs for {a} (conductor {n})"));
    if padded(&a, n, width) != o.reduced {
        return fail("power-basis reduction");
    }
    if a.degree() != o.degree {
        return fail("degree");
    }
    if a.trace_norm() != (o.trace.clone(), o.norm.clone()) {
        return fail("trace/norm");
    }
    let mut ours: Vec<Poly> = a.conjugates().iter().map(|c| padded(c, n, width)).collect();
    let mut theirs = o.conjugates.clone();
    ours.sort();
    theirs.sort();
    if ours != theirs {
        return fail("conjugate set");
    }
    // M on the totally real part a + conj(a)
    let mut sym = dense.clone();
    for (i, c) in dense.iter().enumerate() {
        sym[(n as usize - i) % n as usize] += c;
    }
    let b = to_cyc(n, &sym);
    let ob = oracle(&f, &sym);
    let mut total = vec![Rat::zero(); width];
    for c in &ob.conjugates {
        for (t, x) in total.iter_mut().zip(f.mul(c, c)) {
            *t += x;
        }
    }
    let expected = f.rational(&total) / Rat::from_integer(ob.degree.into());
    if b.m_measure().map_err(|e| e.to_string())? != expected {
        return fail("M(a + conj a)");
    }
    Ok(())
}
