//! JSON encodings: a [`Cyc`] is `{"n": conductor, "c": [["num","den"], ...]}`
//! with exactly φ(n) dense coefficients, a [`RootOfUnity`] is `{"m": order, "k": exponent}`.
//! Integers travel as decimal strings so nothing is lost to 64-bit limits.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Cyc, Rat, RootOfUnity};
use crate::error::{Error, Result};
use crate::numtheory::euler_phi;

/// Largest conductor accepted from untrusted input.
pub const MAX_CONDUCTOR: u64 = 100_000;
/// Largest root-of-unity order accepted from untrusted input.
pub const MAX_ORDER: u64 = 1_000_000;
const MAX_DIGITS: usize = 4096;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycWire {
    pub n: u64,
    pub c: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootWire {
    pub m: u64,
    pub k: i64,
}

fn parse_int(s: &str) -> Result<BigInt> {
    if s.is_empty() || s.len() > MAX_DIGITS {
        return Err(Error::Parse(format!(
            "bad integer literal of length {}",
            s.len()
        )));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer literal {s:?}")))
}

impl TryFrom<CycWire> for Cyc {
    type Error = Error;

    fn try_from(w: CycWire) -> Result<Cyc> {
        if w.n == 0 || w.n > MAX_CONDUCTOR {
            return Err(Error::ConductorTooLarge(w.n));
        }
        let phi = euler_phi(w.n);
        if w.c.len() as u64 != phi {
            return Err(Error::Parse(format!(
                "conductor {} needs {phi} coefficients, got {}",
                w.n,
                w.c.len()
            )));
        }
        let coeffs =
            w.c.iter()
                .map(|(num, den)| {
                    let den = parse_int(den)?;
                    if den.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(Rat::new(parse_int(num)?, den))
                })
                .collect::<Result<Vec<_>>>()?;
        Cyc::from_coeffs(w.n, coeffs)
    }
}

impl From<&Cyc> for CycWire {
    fn from(a: &Cyc) -> CycWire {
        let c = a
            .coeffs()
            .into_iter()
            .map(|r| (r.numer().to_string(), r.denom().to_string()))
            .collect();
        CycWire {
            n: a.conductor(),
            c,
        }
    }
}

impl TryFrom<RootWire> for RootOfUnity {
    type Error = Error;

    fn try_from(w: RootWire) -> Result<RootOfUnity> {
        if w.m == 0 || w.m > MAX_ORDER {
            return Err(Error::Parse(format!(
                "root of unity order {} out of range",
                w.m
            )));
        }
        Ok(RootOfUnity::new(w.m, w.k))
    }
}

impl From<&RootOfUnity> for RootWire {
    fn from(r: &RootOfUnity) -> RootWire {
        RootWire {
            m: r.order(),
            k: r.exponent() as i64,
        }
    }
}

impl Serialize for Cyc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CycWire::deserialize(d)?;
        Cyc::try_from(w).map_err(serde::de::Error::custom)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = RootWire::deserialize(d)?;
        RootOfUnity::try_from(w).map_err(serde::de::Error::custom)
    }
}

/// Parse a single Cyc from JSON text.
pub fn parse_cyc(text: &str) -> Result<Cyc> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parse a single RootOfUnity from JSON text.
pub fn parse_root(text: &str) -> Result<RootOfUnity> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    #[test]
    fn cyc_round_trip() {
        let a = Cyc::root_of_unity(8, 1).scale(&rat(-3, 7)) + Cyc::from_int(2);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(
            text,
            r#"{"n":8,"c":[["2","1"],["-3","7"],["0","1"],["0","1"]]}"#
        );
        assert_eq!(parse_cyc(&text).unwrap(), a);
    }

    #[test]
    fn root_round_trip() {
        let r = RootOfUnity::new(12, 10);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"m":6,"k":5}"#);
        assert_eq!(parse_root(&text).unwrap(), r);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_cyc(r#"{"n":8,"c":[["1","1"]]}"#).is_err());
        assert!(parse_cyc(r#"{"n":1,"c":[["1","0"]]}"#).is_err());
        assert!(parse_cyc(r#"{"n":0,"c":[]}"#).is_err());
        assert!(parse_cyc(r#"{"n":1,"c":[["x","1"]]}"#).is_err());
        assert!(parse_root(r#"{"m":0,"k":1}"#).is_err());
    }
}
