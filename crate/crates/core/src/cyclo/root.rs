use std::fmt;

use super::Cyc;
use num_traits::ToPrimitive;

use crate::numtheory::{gcd, lcm, residue};

/// ζ_order^exponent kept in lowest terms: `gcd(exponent, order) = 1` (or the
/// pair (1, 0) for unity), so `order` is the multiplicative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity {
        order: 1,
        exponent: 0,
    };

    /// ζ_m^k, normalised. Panics if `m == 0`.
    pub fn new(m: u64, k: i64) -> Self {
        assert!(m >= 1, "root of unity of order 0");
        let k = residue(k, m);
        if k == 0 {
            return Self::ONE;
        }
        let g = gcd(m, k);
        RootOfUnity {
            order: m / g,
            exponent: k / g,
        }
    }

    pub fn minus_one() -> Self {
        Self::new(2, 1)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// Exponent of this root written over ζ_n; `n` must be a multiple of the order.
    pub fn exponent_over(&self, n: u64) -> u64 {
        debug_assert_eq!(n % self.order, 0);
        self.exponent * (n / self.order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.order, other.order);
        let k = self.exponent_over(m) + other.exponent_over(m);
        Self::new(m, (k % m) as i64)
    }

    pub fn inv(&self) -> Self {
        Self::new(self.order, -(self.exponent as i64))
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let m = self.order;
        let k = (self.exponent as i128 * residue(e, m) as i128) % m as i128;
        Self::new(m, k as i64)
    }

    /// Image under ζ ↦ ζ^k on any cyclotomic field containing this root.
    pub fn galois(&self, k: i64) -> Self {
        self.pow(k)
    }

    pub fn to_cyc(&self) -> Cyc {
        Cyc::root_of_unity(self.order, self.exponent as i64)
    }

    /// Recover the root of unity represented by `a`, if any.
    pub fn from_cyc(a: &Cyc) -> Option<Self> {
        // Every root of unity in Q(ζ_n) is a power of ζ_N with N = lcm(2, n).
        // The f64 argument only proposes the exponent; spacing 2π/N is far
        // above f64 error here, and the exact comparison certifies it.
        if a.is_zero() || !a.is_integral() {
            return None;
        }
        let n = a.conductor();
        let big_n = lcm(2, n);
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (e, c) in a.terms() {
            let c = c.to_f64()?;
            let angle = std::f64::consts::TAU * (*e as f64) / n as f64;
            re += c * angle.cos();
            im += c * angle.sin();
        }
        if !re.is_finite() || !im.is_finite() || (re.hypot(im) - 1.0).abs() > 1e-6 {
            return None;
        }
        let k = (im.atan2(re) / std::f64::consts::TAU * big_n as f64).round() as i64;
        let z = RootOfUnity::new(big_n, k);
        (z.to_cyc() == *a).then_some(z)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (m, 1) => write!(f, "E({m})"),
            (m, k) => write!(f, "E({m})^{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation_folds_gcd_into_order() {
        let r = RootOfUnity::new(9, 6);
        assert_eq!((r.order(), r.exponent()), (3, 2));
        assert_eq!(RootOfUnity::new(4, 8), RootOfUnity::ONE);
        assert_eq!(RootOfUnity::new(16, -1), RootOfUnity::new(16, 15));
    }

    #[test]
    fn group_law() {
        let a = RootOfUnity::new(16, 3);
        let b = RootOfUnity::new(6, 1);
        assert_eq!(a.mul(&b).order(), 48);
        assert_eq!(a.mul(&a.inv()), RootOfUnity::ONE);
        assert_eq!(a.pow(16), RootOfUnity::ONE);
        assert_eq!(a.pow(8), RootOfUnity::minus_one());
    }

    #[test]
    fn cyc_round_trip() {
        for m in [1u64, 2, 3, 4, 5, 8, 9, 12, 16, 18] {
            for k in 0..m as i64 {
                let r = RootOfUnity::new(m, k);
                assert_eq!(RootOfUnity::from_cyc(&r.to_cyc()), Some(r));
            }
        }
    }

    #[test]
    fn from_cyc_rejects_unimodular_non_roots() {
        // (3 + 4i)/5 has modulus 1 but is not integral
        let i = Cyc::root_of_unity(4, 1);
        let a =
            (Cyc::from_int(3) + i.scale(&crate::cyclo::rat(4, 1))).scale(&crate::cyclo::rat(1, 5));
        assert_eq!(RootOfUnity::from_cyc(&a), None);
        // 1 + ζ₆ has modulus √3
        assert_eq!(
            RootOfUnity::from_cyc(&(Cyc::one() + Cyc::root_of_unity(6, 1))),
            None
        );
        // (ζ₁₅)^11 needs several power-basis terms
        let z = RootOfUnity::new(15, 11);
        assert!(z.to_cyc().terms().len() > 1);
        assert_eq!(
            RootOfUnity::from_cyc(&-z.to_cyc()),
            Some(z.mul(&RootOfUnity::minus_one()))
        );
    }
}
