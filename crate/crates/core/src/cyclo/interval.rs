//! Fixed-point ball arithmetic. A [`RealInterval`] at `bits` of precision
//! encloses the reals in `[(mid - rad) / 2^bits, (mid + rad) / 2^bits]`;
//! every operation rounds outward so the enclosure stays sound.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Cyc, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    mid: BigInt,
    rad: BigInt,
    bits: u32,
}

fn ceil_div(a: &BigInt, d: &BigInt) -> BigInt {
    // a >= 0, d > 0
    (a + d - 1u32) / d
}

impl RealInterval {
    pub fn zero(bits: u32) -> Self {
        RealInterval {
            mid: BigInt::zero(),
            rad: BigInt::zero(),
            bits,
        }
    }

    pub fn from_int(v: i64, bits: u32) -> Self {
        RealInterval {
            mid: BigInt::from(v) << bits,
            rad: BigInt::zero(),
            bits,
        }
    }

    pub fn from_rat(r: &Rat, bits: u32) -> Self {
        let scaled = r.numer() << bits;
        let (q, rem) = scaled.div_mod_floor(r.denom());
        let rad = if rem.is_zero() {
            BigInt::zero()
        } else {
            BigInt::from(1)
        };
        RealInterval { mid: q, rad, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        RealInterval {
            mid: &self.mid + &o.mid,
            rad: &self.rad + &o.rad,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        RealInterval {
            mid: &self.mid - &o.mid,
            rad: &self.rad + &o.rad,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Self {
        RealInterval {
            mid: -&self.mid,
            rad: self.rad.clone(),
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        let one = BigInt::from(1) << self.bits;
        let mid = (&self.mid * &o.mid).div_floor(&one);
        let err = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
        let rad = ceil_div(&err, &one) + 1u32;
        RealInterval {
            mid,
            rad,
            bits: self.bits,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        RealInterval {
            mid: &self.mid * k,
            rad: &self.rad * k.unsigned_abs(),
            bits: self.bits,
        }
    }

    pub fn div_int(&self, k: u64) -> Self {
        let k = BigInt::from(k);
        RealInterval {
            mid: self.mid.div_floor(&k),
            rad: ceil_div(&self.rad, &k) + 1u32,
            bits: self.bits,
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        let num = r.numer();
        let den = r.denom();
        RealInterval {
            mid: (&self.mid * num).div_floor(den),
            rad: ceil_div(&(&self.rad * num.abs()), den) + 1u32,
            bits: self.bits,
        }
    }

    /// Grow the radius by `ulps` units in the last place.
    pub fn widen(&self, ulps: &BigInt) -> Self {
        RealInterval {
            mid: self.mid.clone(),
            rad: &self.rad + ulps,
            bits: self.bits,
        }
    }

    /// Upper bound on |x| in ulps.
    fn magnitude_ulps(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    /// Certified sign, or `None` if the ball straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if &self.mid - &self.rad > BigInt::zero() {
            Some(Ordering::Greater)
        } else if &self.mid + &self.rad < BigInt::zero() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// True when the width is at most 2^-precision.
    pub fn is_narrower_than(&self, precision: u32) -> bool {
        if self.bits < precision {
            return self.rad.is_zero();
        }
        let width = &self.rad * 2u32;
        width <= BigInt::from(1) << (self.bits - precision)
    }

    /// True when the whole ball lies strictly inside (-bound, bound).
    pub fn within(&self, bound: i64) -> bool {
        self.magnitude_ulps() < (BigInt::from(bound) << self.bits)
    }

    pub fn lo(&self) -> f64 {
        to_f64(&(&self.mid - &self.rad), self.bits)
    }

    pub fn hi(&self) -> f64 {
        to_f64(&(&self.mid + &self.rad), self.bits)
    }

    pub fn midpoint(&self) -> f64 {
        to_f64(&self.mid, self.bits)
    }

    /// Enclosure of the square root; `None` unless the ball is strictly positive.
    pub fn sqrt(&self) -> Option<Self> {
        let lo = &self.mid - &self.rad;
        if lo.sign() != Sign::Plus {
            return None;
        }
        let hi = &self.mid + &self.rad;
        let a = (lo << self.bits).sqrt();
        let b = (hi << self.bits).sqrt() + 1u32;
        let mid = (&a + &b) >> 1u32;
        let rad = (&b - &a) / 2u32 + 1u32;
        Some(RealInterval {
            mid,
            rad,
            bits: self.bits,
        })
    }
}

fn to_f64(v: &BigInt, bits: u32) -> f64 {
    // keep 64 significant bits before converting
    let shift = v.bits().saturating_sub(64) as u32;
    let top = (v >> shift).to_f64().unwrap_or(0.0);
    top * 2f64.powi(shift as i32 - bits as i32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexInterval {
    pub fn zero(bits: u32) -> Self {
        ComplexInterval {
            re: RealInterval::zero(bits),
            im: RealInterval::zero(bits),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, r: &RealInterval) -> Self {
        ComplexInterval {
            re: self.re.mul(r),
            im: self.im.mul(r),
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        ComplexInterval {
            re: self.re.mul_rat(r),
            im: self.im.mul_rat(r),
        }
    }

    pub fn is_narrower_than(&self, precision: u32) -> bool {
        self.re.is_narrower_than(precision) && self.im.is_narrower_than(precision)
    }

    pub fn midpoint(&self) -> (f64, f64) {
        (self.re.midpoint(), self.im.midpoint())
    }
}

/// π by Machin's formula.
pub fn pi(bits: u32) -> RealInterval {
    arctan_recip(5, bits)
        .mul_int(16)
        .sub(&arctan_recip(239, bits).mul_int(4))
}

/// arctan(1/x) for x >= 2.
fn arctan_recip(x: u64, bits: u32) -> RealInterval {
    let mut power = RealInterval::from_int(1, bits).div_int(x);
    let x2 = x * x;
    let mut sum = RealInterval::zero(bits);
    let mut k = 0u64;
    loop {
        let term = power.div_int(2 * k + 1);
        sum = if k.is_multiple_of(2) {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
        power = power.div_int(x2);
        if power.magnitude_ulps() <= BigInt::from(2) {
            // alternating, decreasing: the tail is bounded by the next term
            return sum.widen(&(power.magnitude_ulps() + 1u32));
        }
        k += 1;
    }
}

/// (cos θ, sin θ) for θ = 2π·j/n, with j reduced into (-n/2, n/2].
pub fn unit_circle(pi: &RealInterval, j: u64, n: u64) -> (RealInterval, RealInterval) {
    let j = j % n;
    let signed = if 2 * j > n {
        j as i64 - n as i64
    } else {
        j as i64
    };
    if signed == 0 {
        return (
            RealInterval::from_int(1, pi.bits),
            RealInterval::zero(pi.bits),
        );
    }
    let theta = pi.mul_int(2 * signed).div_int(n);
    (cos(&theta), sin(&theta))
}

// Taylor series for |x| <= 4; terms decrease once k >= 2.
fn sin(x: &RealInterval) -> RealInterval {
    let x2 = x.mul(x);
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut k = 1u64;
    loop {
        term = term.mul(&x2).div_int((2 * k) * (2 * k + 1));
        sum = if k % 2 == 1 {
            sum.sub(&term)
        } else {
            sum.add(&term)
        };
        if k >= 3 && term.magnitude_ulps() <= BigInt::from(4) {
            return sum.widen(&(term.magnitude_ulps() + 1u32));
        }
        k += 1;
    }
}

fn cos(x: &RealInterval) -> RealInterval {
    let x2 = x.mul(x);
    let mut term = RealInterval::from_int(1, x.bits);
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term = term.mul(&x2).div_int((2 * k - 1) * (2 * k));
        sum = if k % 2 == 1 {
            sum.sub(&term)
        } else {
            sum.add(&term)
        };
        if k >= 3 && term.magnitude_ulps() <= BigInt::from(4) {
            return sum.widen(&(term.magnitude_ulps() + 1u32));
        }
        k += 1;
    }
}

/// Enclosure of `a` under ζ_n ↦ exp(2πi/n) at a fixed working precision.
pub(crate) fn embed_at(a: &Cyc, bits: u32) -> ComplexInterval {
    let pi = pi(bits);
    let n = a.conductor();
    let mut acc = ComplexInterval::zero(bits);
    for (e, c) in a.terms() {
        let (re, im) = unit_circle(&pi, *e, n);
        acc = acc.add(&ComplexInterval {
            re: re.mul_rat(c),
            im: im.mul_rat(c),
        });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_encloses_reference() {
        let p = pi(80);
        assert!(p.lo() <= std::f64::consts::PI && std::f64::consts::PI <= p.hi());
        assert!(p.is_narrower_than(60));
    }

    #[test]
    fn unit_circle_values() {
        let p = pi(96);
        let (c, s) = unit_circle(&p, 1, 8);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((c.midpoint() - h).abs() < 1e-15 && (s.midpoint() - h).abs() < 1e-15);
        let (c, s) = unit_circle(&p, 3, 4);
        assert!(c.contains_zero());
        assert_eq!(s.sign(), Some(Ordering::Less));
    }

    #[test]
    fn sqrt_encloses() {
        let two = RealInterval::from_int(2, 64);
        let r = two.sqrt().unwrap();
        assert!(r.lo() <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= r.hi());
        assert!(RealInterval::from_int(-1, 64).sqrt().is_none());
    }
}
