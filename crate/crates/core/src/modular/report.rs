use std::fmt;

use serde::Serialize;

use super::{GaussSign, ModularDatum};
use crate::cyclo::{rat, Cyc};

/// One named check; `witness` explains the first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Every check that was run, passing or not.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, name: &str, outcome: Result<(), String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: outcome.is_ok(),
            witness: outcome.err(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{mark}  {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, "  ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub(super) fn verify(md: &ModularDatum) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let r = md.rank();
    let s = md.s();
    let d = md.global_dim();

    rep.push("S symmetric", symmetric(md));

    rep.push("S conj(S) = dim(C) I", {
        let mut out = Ok(());
        'rows: for x in 0..r {
            for y in 0..r {
                let v = (0..r).fold(Cyc::zero(), |acc, k| acc + &s[x][k] * &s[y][k].conj());
                let want = if x == y { d.clone() } else { Cyc::zero() };
                if v != want {
                    out = Err(format!(
                        "entry ({}, {}) is {v}, expected {want}",
                        md.labels()[x],
                        md.labels()[y]
                    ));
                    break 'rows;
                }
            }
        }
        out
    });

    let charge = md.charge_conjugation();
    rep.push(
        "S^2 / dim(C) is an involutive permutation",
        match &charge {
            Some(c) if (0..r).all(|x| c[c[x]] == x) => Ok(()),
            Some(_) => Err("charge conjugation is not an involution".into()),
            None => Err("S^2 / dim(C) is not a permutation matrix".into()),
        },
    );

    let fusion = md.verlinde_fusion();
    rep.push(
        "Verlinde integrality",
        match &fusion {
            Ok(ft) => ft.axiom_violation().map_or(Ok(()), Err),
            Err(e) => Err(e.to_string()),
        },
    );

    rep.push(
        "charge conjugation matches duality",
        match (&charge, &fusion) {
            (Some(c), Ok(ft)) => match ft.duals() {
                Ok(duals) if duals == *c => Ok(()),
                Ok(duals) => Err(format!("S^2 gives {c:?}, fusion gives {duals:?}")),
                Err(e) => Err(e.to_string()),
            },
            _ => Err("needs both charge conjugation and fusion rules".into()),
        },
    );

    rep.push(
        "balancing",
        match &fusion {
            Ok(ft) => {
                let dims = md.dims();
                let theta: Vec<Cyc> = (0..r).map(|x| md.theta(x).to_cyc()).collect();
                let mut out = Ok(());
                'pairs: for x in 0..r {
                    for y in x..r {
                        let lhs = &(&theta[x] * &theta[y]) * &s[x][y];
                        let rhs =
                            (0..r)
                                .filter(|&z| ft.get(x, y, z) > 0)
                                .fold(Cyc::zero(), |acc, z| {
                                    acc + (&dims[z] * &theta[z])
                                        .scale(&rat(ft.get(x, y, z) as i64, 1))
                                });
                        if lhs != rhs {
                            out = Err(format!(
                                "pair ({}, {}): {lhs} != {rhs}",
                                md.labels()[x],
                                md.labels()[y]
                            ));
                            break 'pairs;
                        }
                    }
                }
                out
            }
            Err(_) => Err("fusion rules unavailable".into()),
        },
    );

    rep.push("|tau_1^+|^2 = dim(C)", {
        let tau = md.gauss_sum(1, GaussSign::Plus);
        let norm = &tau * &tau.conj();
        if norm == *d {
            Ok(())
        } else {
            Err(format!("|tau|^2 = {norm}, dim(C) = {d}"))
        }
    });

    // RootOfUnity values have finite order by construction
    rep.push("T entries are roots of unity", Ok(()));
    rep
}

fn symmetric(md: &ModularDatum) -> Result<(), String> {
    let s = md.s();
    for x in 0..md.rank() {
        for y in x + 1..md.rank() {
            if s[x][y] != s[y][x] {
                return Err(format!("S[{x}][{y}] != S[{y}][{x}]"));
            }
        }
    }
    Ok(())
}
