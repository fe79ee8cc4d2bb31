use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rat;
use crate::numtheory::{divisors, euler_phi, prime_factors, radical};

/// Reduction data for Q(ζ_n): Φ_n(x) = x^φ + Σ low[i].1 · x^{low[i].0}.
#[derive(Debug)]
pub(crate) struct FieldCtx {
    pub phi: u64,
    pub low: Vec<(u64, i64)>,
}

thread_local! {
    static CONTEXTS: RefCell<HashMap<u64, Rc<FieldCtx>>> = RefCell::new(HashMap::new());
}

pub(crate) fn field_ctx(n: u64) -> Rc<FieldCtx> {
    if let Some(ctx) = CONTEXTS.with(|c| c.borrow().get(&n).cloned()) {
        return ctx;
    }
    let coeffs = cyclotomic_polynomial(n);
    let phi = (coeffs.len() - 1) as u64;
    debug_assert_eq!(phi, euler_phi(n));
    let low = coeffs[..coeffs.len() - 1]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i as u64, c))
        .collect();
    let ctx = Rc::new(FieldCtx { phi, low });
    CONTEXTS.with(|c| c.borrow_mut().insert(n, ctx.clone()));
    ctx
}

/// Integer coefficients of Φ_n, constant term first.
///
/// Φ_n(x) = Φ_rad(n)(x^{n/rad(n)}), and Φ_m for squarefree m comes from
/// dividing x^m - 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let rad = radical(n);
    let base = squarefree_cyclotomic(rad);
    let stretch = (n / rad) as usize;
    let mut out = vec![0i64; (base.len() - 1) * stretch + 1];
    for (i, c) in base.into_iter().enumerate() {
        out[i * stretch] = c;
    }
    out
}

fn squarefree_cyclotomic(m: u64) -> Vec<i64> {
    // Φ_m = Π_{d|m} (x^d - 1)^{μ(m/d)}: multiply the positive factors, then
    // divide out the negative ones.
    let mut num = vec![1i64];
    let mut dens = Vec::new();
    for d in divisors(m) {
        let omega = prime_factors(m / d).len();
        let mut f = vec![0i64; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        if omega.is_multiple_of(2) {
            num = mul_int(&num, &f);
        } else {
            dens.push(f);
        }
    }
    for f in dens {
        num = exact_div(&num, &f);
    }
    num
}

fn mul_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let qlen = rem.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Inverse of `a` modulo Φ_n by the extended Euclidean algorithm over Q.
/// `a` is a dense coefficient vector of length < deg Φ_n and must be nonzero.
pub(crate) fn invert_mod_cyclotomic(a: &[Rat], n: u64) -> Vec<Rat> {
    let phi_coeffs: Vec<Rat> = cyclotomic_polynomial(n)
        .into_iter()
        .map(|c| Rat::from_integer(BigInt::from(c)))
        .collect();
    // invariant: s_i * a ≡ r_i (mod Φ_n)
    let mut r0 = trim(phi_coeffs);
    let mut r1 = trim(a.to_vec());
    let mut s0: Vec<Rat> = Vec::new();
    let mut s1: Vec<Rat> = vec![Rat::one()];
    while r1.len() > 1 {
        let (q, r) = divmod(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r1 is a nonzero constant
    let c = r1[0].clone();
    let mut out: Vec<Rat> = s1.into_iter().map(|x| x / &c).collect();
    let phi = euler_phi(n) as usize;
    out.resize(phi, Rat::zero());
    out
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead = den[dn].clone();
    let mut q = vec![Rat::zero(); rem.len() - dn];
    for i in (0..q.len()).rev() {
        let c = &rem[i + dn] / &lead;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
        }
        q[i] = c;
    }
    (trim(q), trim(rem))
}

fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        assert_eq!(p105.iter().filter(|&&c| c == -2).count(), 2);
    }

    #[test]
    fn phi_192_is_sparse() {
        let ctx = field_ctx(192);
        assert_eq!(ctx.phi, 64);
        assert_eq!(ctx.low, vec![(0, 1), (32, -1)]);
    }
}
