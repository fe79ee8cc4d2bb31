//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! A [`Cyc`] stores its value in the power basis `{ζ_n^i : 0 <= i < φ(n)}`,
//! sparsely, so that single roots of unity at large conductor stay cheap.

mod interval;
mod poly;
mod root;
pub mod wire;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, gcd, lcm, mod_inverse, prime_factors, residue, units};

pub use interval::{pi, ComplexInterval, RealInterval};
pub use poly::cyclotomic_polynomial;
pub use root::RootOfUnity;

pub type Rat = BigRational;

/// Element of Q(ζ_n).
///
/// `terms` is sorted by exponent, every exponent is below φ(n) and every
/// coefficient is nonzero.
#[derive(Clone, Debug)]
pub struct Cyc {
    n: u64,
    terms: Vec<(u64, Rat)>,
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc {
            n: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Cyc::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Cyc::from_rat(Rat::from_integer(BigInt::from(v)))
    }

    pub fn from_rat(r: Rat) -> Self {
        let terms = if r.is_zero() {
            Vec::new()
        } else {
            vec![(0, r)]
        };
        Cyc { n: 1, terms }
    }

    /// ζ_n^k at conductor `n`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        Cyc::from_terms(n, [(residue(k, n), Rat::one())])
    }

    /// Build from arbitrary `(exponent, coefficient)` pairs, reducing
    /// exponents mod n and then mod Φ_n.
    pub fn from_terms<I>(n: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, Rat)>,
    {
        let mut acc: BTreeMap<u64, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            *acc.entry(e % n).or_insert_with(Rat::zero) += c;
        }
        Cyc::reduce_map(n, acc)
    }

    /// Dense power-basis coefficients; length must be φ(n).
    pub fn from_coeffs(n: u64, coeffs: Vec<Rat>) -> Result<Self> {
        let phi = euler_phi(n);
        if coeffs.len() as u64 != phi {
            return Err(Error::Parse(format!(
                "conductor {n} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64, c))
            .collect();
        Ok(Cyc { n, terms })
    }

    fn reduce_map(n: u64, mut acc: BTreeMap<u64, Rat>) -> Self {
        let ctx = poly::field_ctx(n);
        // x^e = -x^{e-φ} Σ low, applied from the top down
        while let Some((&e, _)) = acc.range(ctx.phi..).next_back() {
            let c = acc.remove(&e).unwrap();
            if c.is_zero() {
                continue;
            }
            let base = e - ctx.phi;
            for &(j, a) in &ctx.low {
                *acc.entry(base + j).or_insert_with(Rat::zero) -= &c * BigInt::from(a);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Cyc { n, terms }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn terms(&self) -> &[(u64, Rat)] {
        &self.terms
    }

    /// Dense coefficient vector of length φ(conductor).
    pub fn coeffs(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); euler_phi(self.n) as usize];
        for (e, c) in &self.terms {
            out[*e as usize] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value, if this element is rational. In the power basis
    /// that means the only possible term sits at exponent 0.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Algebraic integer test: the power basis is an integral basis of Z[ζ_n].
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Same value written over ζ_m; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u64) -> Self {
        assert_eq!(m % self.n, 0, "cannot lift conductor {} to {m}", self.n);
        if m == self.n {
            return self.clone();
        }
        let s = m / self.n;
        Cyc::from_terms(m, self.terms.iter().map(|(e, c)| (e * s, c.clone())))
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            return (self.clone(), other.clone());
        }
        let m = lcm(self.n, other.n);
        (self.lift(m), other.lift(m))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Cyc {
                n: self.n,
                terms: Vec::new(),
            };
        }
        let terms = self.terms.iter().map(|(e, c)| (*e, c * r)).collect();
        Cyc { n: self.n, terms }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if self.n != other.n {
            let (a, b) = self.common(other);
            return a.add_impl(&b, negate);
        }
        let mut acc: BTreeMap<u64, Rat> = self.terms.iter().cloned().collect();
        for (e, c) in &other.terms {
            let slot = acc.entry(*e).or_insert_with(Rat::zero);
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Cyc { n: self.n, terms }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.n != other.n {
            // rationals multiply without lifting
            if other.n == 1 {
                return match other.terms.first() {
                    Some((_, r)) => self.scale(r),
                    None => Cyc {
                        n: self.n,
                        terms: Vec::new(),
                    },
                };
            }
            if self.n == 1 {
                return other.mul_impl(self);
            }
            let (a, b) = self.common(other);
            return a.mul_impl(&b);
        }
        let n = self.n;
        let mut acc: BTreeMap<u64, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                *acc.entry((e1 + e2) % n).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        Cyc::reduce_map(n, acc)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm modulo Φ_n.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let [(e, c)] = self.terms.as_slice() {
            return Ok(Cyc::from_terms(self.n, [(self.n - e % self.n, c.recip())]));
        }
        let red = self.reduce_conductor();
        if let Some(r) = red.as_rational() {
            return Ok(Cyc::from_rat(r.recip()).lift(self.n));
        }
        let coeffs = poly::invert_mod_cyclotomic(&red.coeffs(), red.n);
        Ok(Cyc::from_coeffs(red.n, coeffs)?.lift(self.n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyc::one().lift(self.n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Field automorphism ζ_n ↦ ζ_n^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.n;
        let kk = residue(k, n);
        if n > 1 && gcd(kk, n) != 1 {
            return Err(Error::NotCoprime { k, n });
        }
        Ok(self.galois_unchecked(kk))
    }

    fn galois_unchecked(&self, k: u64) -> Self {
        if self.n <= 2 {
            return self.clone();
        }
        let n = self.n as u128;
        Cyc::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(e, c)| (((*e as u128 * k as u128) % n) as u64, c.clone())),
        )
    }

    pub fn conj(&self) -> Self {
        self.galois_unchecked(self.n.saturating_sub(1).max(1))
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Same value at the smallest conductor containing it.
    pub fn reduce_conductor(&self) -> Self {
        if self.terms.iter().all(|(e, _)| *e == 0) {
            return Cyc {
                n: 1,
                terms: self.terms.clone(),
            };
        }
        let mut cur = self.clone();
        'outer: loop {
            for p in prime_factors(cur.n) {
                if let Some(next) = cur.descend(p) {
                    cur = next;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    // Try to rewrite over ζ_{n/p}.
    fn descend(&self, p: u64) -> Option<Self> {
        let n = self.n;
        let m = n / p;
        if m.is_multiple_of(p) {
            // Φ_n(x) = Φ_m(x^p): the subfield is spanned by exponents divisible by p
            if self.terms.iter().all(|(e, _)| e % p == 0) {
                let terms = self.terms.iter().map(|(e, c)| (e / p, c.clone())).collect();
                return Some(Cyc { n: m, terms });
            }
            return None;
        }
        if m == 1 {
            // Q(ζ_p) ∩ Q = Q
            return self.terms.iter().all(|(e, _)| *e == 0).then(|| Cyc {
                n: 1,
                terms: self.terms.clone(),
            });
        }
        // ζ_n^e = ζ_m^{e·x} ζ_p^{e·y}; project ζ_p^j onto Q
        let x = mod_inverse(p % m, m).expect("p coprime to m");
        let y = mod_inverse(m % p, p).expect("m coprime to p");
        let off = -rat(1, p as i64 - 1);
        let proj = Cyc::from_terms(
            m,
            self.terms.iter().map(|(e, c)| {
                let coeff = if (e * y).is_multiple_of(p) {
                    c.clone()
                } else {
                    c * &off
                };
                ((e * x) % m, coeff)
            }),
        );
        (proj.lift(n) == *self).then_some(proj)
    }

    fn stabilizer(&self) -> Vec<u64> {
        units(self.n)
            .into_iter()
            .filter(|&k| self.galois_unchecked(k) == *self)
            .collect()
    }

    /// One automorphism per coset of the stabilizer, on the reduced form.
    fn conjugate_reps(&self) -> (Self, Vec<u64>) {
        let red = self.reduce_conductor();
        let stab = red.stabilizer();
        let n = red.n;
        let mut seen = HashSet::new();
        let mut reps = Vec::new();
        for k in units(n) {
            if seen.contains(&k) {
                continue;
            }
            reps.push(k);
            for h in &stab {
                seen.insert(((k as u128 * *h as u128) % n.max(1) as u128) as u64);
            }
        }
        (red, reps)
    }

    /// (c, reps): `reps` holds one k per coset of the stabilizer of `a` in
    /// (Z/c)^×, c being the reduced conductor.
    pub fn galois_coset_reps(&self) -> (u64, Vec<u64>) {
        let (red, reps) = self.conjugate_reps();
        (red.n, reps)
    }

    /// [Q(a):Q].
    pub fn degree(&self) -> u64 {
        let red = self.reduce_conductor();
        euler_phi(red.n) / red.stabilizer().len() as u64
    }

    /// The distinct Galois conjugates of `a`.
    pub fn conjugates(&self) -> Vec<Cyc> {
        let (red, reps) = self.conjugate_reps();
        reps.into_iter().map(|k| red.galois_unchecked(k)).collect()
    }

    /// (Tr_{Q(a)/Q}(a), N_{Q(a)/Q}(a)).
    pub fn trace_norm(&self) -> (Rat, Rat) {
        let conj = self.conjugates();
        let mut tr = Cyc::zero();
        let mut nm = Cyc::one();
        for c in &conj {
            tr = &tr + c;
            nm = &nm * c;
        }
        let tr = tr.as_rational().expect("trace is rational");
        let nm = nm.as_rational().expect("norm is rational");
        (tr, nm)
    }

    /// M(a) = Tr_{Q(a)/Q}(a²) / [Q(a):Q] for totally real `a`.
    pub fn m_measure(&self) -> Result<Rat> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        let conj = self.conjugates();
        let mut sum = Cyc::zero();
        for c in &conj {
            sum = &sum + &(c * c);
        }
        let tr = sum.as_rational().expect("trace is rational");
        Ok(tr / Rat::from_integer(BigInt::from(conj.len())))
    }

    /// Multiplicative order if `a` is a root of unity.
    pub fn is_root_of_unity(&self) -> Option<u64> {
        RootOfUnity::from_cyc(self).map(|z| z.order())
    }

    /// Interval enclosure of the image under ζ_n ↦ exp(2πi/n), of width at
    /// most 2^-precision in each coordinate.
    pub fn embed(&self, precision: u32) -> ComplexInterval {
        let mut bits = precision + 32;
        loop {
            let z = interval::embed_at(self, bits);
            if z.is_narrower_than(precision) {
                return z;
            }
            bits *= 2;
        }
    }

    /// Floating-point approximation (re, im); diagnostics only.
    pub fn to_c64(&self) -> (f64, f64) {
        self.embed(60).midpoint()
    }

    /// Certified sign of a real element.
    pub fn real_sign(&self) -> Result<Ordering> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        let mut bits = 64;
        loop {
            if let Some(s) = interval::embed_at(self, bits).re.sign() {
                return Ok(s);
            }
            bits *= 2;
            if bits > 1 << 20 {
                return Err(Error::Numerical(format!("sign of {self} not resolved")));
            }
        }
    }

    /// Compare two real elements.
    pub fn real_cmp(&self, other: &Self) -> Result<Ordering> {
        (self - other).real_sign()
    }

    /// Every Galois conjugate is strictly positive.
    pub fn is_totally_positive(&self) -> Result<bool> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        if self.is_zero() {
            return Ok(false);
        }
        for c in self.conjugates() {
            if c.real_sign()? != Ordering::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// [Q(ζ_n)⁺:Q], the degree of the maximal real subfield.
pub fn real_subfield_degree(n: u64) -> u64 {
    if n <= 2 {
        1
    } else {
        euler_phi(n) / 2
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.terms == other.terms;
        }
        let (a, b) = self.common(other);
        a.terms == b.terms
    }
}

impl Eq for Cyc {}

impl Default for Cyc {
    fn default() -> Self {
        Cyc::zero()
    }
}

impl From<i64> for Cyc {
    fn from(v: i64) -> Self {
        Cyc::from_int(v)
    }
}

impl From<Rat> for Cyc {
    fn from(r: Rat) -> Self {
        Cyc::from_rat(r)
    }
}

impl From<RootOfUnity> for Cyc {
    fn from(r: RootOfUnity) -> Self {
        r.to_cyc()
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Cyc> for &Cyc {
            type Output = Cyc;
            fn $method(self, rhs: &Cyc) -> Cyc {
                let f: fn(&Cyc, &Cyc) -> Cyc = $body;
                f(self, rhs)
            }
        }
        impl $tr<Cyc> for Cyc {
            type Output = Cyc;
            fn $method(self, rhs: Cyc) -> Cyc {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyc> for Cyc {
            type Output = Cyc;
            fn $method(self, rhs: &Cyc) -> Cyc {
                (&self).$method(rhs)
            }
        }
        impl $tr<Cyc> for &Cyc {
            type Output = Cyc;
            fn $method(self, rhs: Cyc) -> Cyc {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, false));
binop!(Sub, sub, |a, b| a.add_impl(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        Cyc { n: self.n, terms }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let root = match *e {
                0 => String::new(),
                1 => format!("E({})", self.n),
                e => format!("E({})^{e}", self.n),
            };
            match (root.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{root}")?,
                (false, false) => write!(f, "{mag}*{root}")?,
            }
        }
        Ok(())
    }
}
