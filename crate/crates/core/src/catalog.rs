//! Persistence and the builtin catalog, plus the batch sweep behind
//! `mdtk catalog --all`.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_check, key_object, lemma_sweep, siegel_check, BoundVerdict, LemmaLine};
use crate::construct::{
    deligne_product, double_abelian, fibonacci, ising, pointed, so5_level9, trivial, MetricGroup,
};
use crate::cyclo::{Cyc, RootOfUnity};
use crate::error::{Error, Result};
use crate::galois::verify_galois_identities;
use crate::modular::{ModularDatum, VerificationReport};
use crate::numtheory::{checked_lcm, prime_power};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Builtin,
    File,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub source: Source,
    pub datum: ModularDatum,
    pub notes: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumFile {
    name: String,
    labels: Vec<String>,
    #[serde(rename = "S")]
    s: Vec<Vec<Cyc>>,
    #[serde(rename = "T")]
    t: Vec<RootOfUnity>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    notes: String,
}

/// Parse a datum document; runs structural validation but not `verify`.
pub fn from_json(text: &str) -> Result<CatalogEntry> {
    let file: DatumFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let datum = ModularDatum::new(file.labels, file.s, file.t)?;
    Ok(CatalogEntry {
        name: file.name,
        source: Source::File,
        datum,
        notes: file.notes,
    })
}

pub fn to_json(name: &str, md: &ModularDatum, notes: &str) -> String {
    let file = DatumFile {
        name: name.to_string(),
        labels: md.labels().to_vec(),
        s: md.s().to_vec(),
        t: md.t().to_vec(),
        notes: notes.to_string(),
    };
    serde_json::to_string_pretty(&file).expect("datum serializes")
}

pub fn save(md: &ModularDatum, name: &str, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(name, md, "") + "\n").map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load(path: &Path) -> Result<CatalogEntry> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    from_json(&text)
}

fn entry(name: impl Into<String>, notes: &str, datum: ModularDatum) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        source: Source::Builtin,
        datum,
        notes: notes.to_string(),
    }
}

fn cyclic(n: u64, j: i64) -> ModularDatum {
    pointed(&MetricGroup::cyclic_standard(n, j).expect("standard cyclic form"))
}

/// Every builtin datum, in a fixed order.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let mut out = vec![entry("trivial", "rank 1", trivial())];
    for j in (1..16).step_by(2) {
        for (eps, tag) in [(1, "p"), (-1, "m")] {
            out.push(entry(
                format!("ising-j{j}-{tag}"),
                "Ising data at ζ = ζ₁₆^j, sign ε",
                ising(j, eps).expect("odd j"),
            ));
        }
    }
    for j in 1..5 {
        out.push(entry(
            format!("fibonacci-j{j}"),
            "q = ζ₁₀^j",
            fibonacci(j).expect("j mod 5 ≠ 0"),
        ));
    }
    for j in [1, 2, 4, 5, 7, 8] {
        out.push(entry(
            format!("so5-level9-j{j}"),
            "rank 6, ζ = ζ₉^j, nonpseudounitary",
            so5_level9(j).expect("j coprime to 9"),
        ));
    }
    for n in [2, 3, 4, 5, 7, 8, 9] {
        out.push(entry(
            format!("pointed-c{n}"),
            "standard form q(g) = ζ^{g²}",
            cyclic(n, 1),
        ));
    }
    out.push(entry("pointed-c3-j2", "q(g) = ζ₃^{2g²}", cyclic(3, 2)));
    for n in [2, 3] {
        out.push(entry(
            format!("double-c{n}"),
            "G ⊕ Ĝ with the hyperbolic form",
            double_abelian(&[n]).expect("small group"),
        ));
    }
    let is = ising(1, 1).expect("odd j");
    out.push(entry(
        "ising-x-ising",
        "ζ = ζ₁₆ twice",
        deligne_product(&is, &ising(3, -1).expect("odd j")),
    ));
    out.push(entry(
        "ising-x-pointed-c2",
        "Ising ⊠ C₂ with q(1) = i",
        deligne_product(&is, &cyclic(2, 1)),
    ));
    out.push(entry(
        "ising-x-pointed-c4",
        "Ising ⊠ C₄",
        deligne_product(&is, &cyclic(4, 1)),
    ));
    out.push(entry(
        "ising-x-double-c2",
        "Ising ⊠ toric code",
        deligne_product(&is, &double_abelian(&[2]).expect("small group")),
    ));
    out
}

pub fn builtin(name: &str) -> Option<CatalogEntry> {
    builtin_catalog().into_iter().find(|e| e.name == name)
}

/// Everything checked for one builtin.
#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub rank: usize,
    pub fsexp: u64,
    pub dim: String,
    pub ndim: Option<u64>,
    pub n_t: Option<u64>,
    pub verify: VerificationReport,
    pub galois: VerificationReport,
    pub lemma: Vec<LemmaLine>,
    pub siegel_failures: Vec<String>,
    pub key_object: Option<String>,
    pub bound: Option<BoundVerdict>,
    pub errors: Vec<String>,
}

impl EntryResult {
    pub fn lemma_failures(&self) -> usize {
        self.lemma.iter().filter(|l| !l.holds).count()
    }

    pub fn passed(&self) -> bool {
        self.verify.all_passed()
            && self.galois.all_passed()
            && self.lemma_failures() == 0
            && self.siegel_failures.is_empty()
            && self.errors.is_empty()
            && self.bound.as_ref().is_some_and(|b| b.bound_holds)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductResult {
    pub left: String,
    pub right: String,
    pub verdict: std::result::Result<BoundVerdict, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub entries: Vec<EntryResult>,
    pub products: Vec<ProductResult>,
    pub bound_violations: usize,
    pub lemma_failures: usize,
    pub failed_entries: usize,
}

impl SweepSummary {
    pub fn all_passed(&self) -> bool {
        self.failed_entries == 0
            && self.bound_violations == 0
            && self.products.iter().all(|p| p.verdict.is_ok())
    }

    /// One row per builtin and one line of product totals.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<22} {:>4} {:>6} {:>14} {:>6} {:>5} {:>6} {:>6} {:>7} {:>6}  bound",
            "name", "rank", "FSexp", "dim", "Ndim", "n_t", "verify", "galois", "lemma", "siegel"
        );
        for e in &self.entries {
            let lemma = if e.lemma.iter().any(|l| l.note.is_some()) {
                "skip".to_string()
            } else {
                format!("{}/{}", e.lemma.len() - e.lemma_failures(), e.lemma.len())
            };
            let _ = writeln!(
                s,
                "{:<22} {:>4} {:>6} {:>14} {:>6} {:>5} {:>6} {:>6} {:>7} {:>6}  {}",
                e.name,
                e.rank,
                e.fsexp,
                truncate(&e.dim, 14),
                e.ndim.map_or("-".into(), |v| v.to_string()),
                e.n_t.map_or("-".into(), |v| v.to_string()),
                mark(e.verify.all_passed()),
                mark(e.galois.all_passed()),
                lemma,
                mark(e.siegel_failures.is_empty()),
                e.bound
                    .as_ref()
                    .map_or_else(|| "error".to_string(), |b| b.to_string()),
            );
            for err in &e.errors {
                let _ = writeln!(s, "    error: {err}");
            }
        }
        let extremal = self
            .products
            .iter()
            .filter(|p| p.verdict.as_ref().is_ok_and(|v| v.extremal))
            .count();
        let _ = writeln!(
            s,
            "products checked: {}, extremal: {extremal}, bound violations: {}",
            self.products.len(),
            self.bound_violations
        );
        let _ = writeln!(
            s,
            "entries failing a check: {}, lemma lines failing: {}",
            self.failed_entries, self.lemma_failures
        );
        s
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn truncate(s: &str, n: usize) -> String {
    if s.chars().count() <= n {
        s.to_string()
    } else {
        s.chars().take(n - 1).collect::<String>() + "…"
    }
}

/// Full pipeline for one entry.
pub fn check_entry(e: &CatalogEntry) -> EntryResult {
    let md = &e.datum;
    let mut errors = Vec::new();
    let verify = md.verify();
    let galois = verify_galois_identities(md);
    let lemma = lemma_sweep(md).unwrap_or_else(|err| {
        errors.push(format!("lemma sweep: {err}"));
        Vec::new()
    });
    let mut siegel_failures = Vec::new();
    for (x, d) in md.dims().iter().enumerate() {
        match siegel_check(&(d * d)) {
            Ok(true) => {}
            Ok(false) => siegel_failures.push(md.labels()[x].clone()),
            Err(err) => siegel_failures.push(format!("{}: {err}", md.labels()[x])),
        }
    }
    let n_t = match md.normalized_t_order() {
        Ok((_, n)) => Some(n),
        Err(err) => {
            errors.push(format!("n_t: {err}"));
            None
        }
    };
    let fs = md.fs_exponent();
    let key = if fs == 1 || prime_power(fs).is_some() {
        match key_object(md) {
            Ok(Some(x)) => Some(md.labels()[x].clone()),
            Ok(None) => {
                errors.push("no key object although FSexp is a prime power".into());
                None
            }
            Err(err) => {
                errors.push(format!("key object: {err}"));
                None
            }
        }
    } else {
        None
    };
    let bound = bound_check(md)
        .map_err(|err| errors.push(format!("bound check: {err}")))
        .ok();
    EntryResult {
        name: e.name.clone(),
        rank: md.rank(),
        fsexp: fs,
        dim: md.global_dim().to_string(),
        ndim: md.ndim().ok(),
        n_t,
        verify,
        galois,
        lemma,
        siegel_failures,
        key_object: key,
        bound,
        errors,
    }
}

/// Every builtin, then every product of two builtins whose FSexp is a prime
/// power (bound check only).
pub fn sweep(entries: &[CatalogEntry]) -> SweepSummary {
    let results: Vec<EntryResult> = entries.par_iter().map(check_entry).collect();
    let mut pairs = Vec::new();
    for i in 0..entries.len() {
        for j in i..entries.len() {
            let fs = checked_lcm(
                entries[i].datum.fs_exponent(),
                entries[j].datum.fs_exponent(),
            );
            if fs.is_some_and(|f| prime_power(f).is_some()) {
                pairs.push((i, j));
            }
        }
    }
    let products: Vec<ProductResult> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let p = deligne_product(&entries[i].datum, &entries[j].datum);
            ProductResult {
                left: entries[i].name.clone(),
                right: entries[j].name.clone(),
                verdict: bound_check(&p).map_err(|e| e.to_string()),
            }
        })
        .collect();
    let bound_violations = results
        .iter()
        .filter(|r| r.bound.as_ref().is_some_and(|b| !b.bound_holds))
        .count()
        + products
            .iter()
            .filter(|p| p.verdict.as_ref().is_ok_and(|v| !v.bound_holds))
            .count();
    SweepSummary {
        lemma_failures: results.iter().map(EntryResult::lemma_failures).sum(),
        failed_entries: results.iter().filter(|r| !r.passed()).count(),
        entries: results,
        products,
        bound_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let cat = builtin_catalog();
        let mut names: Vec<_> = cat.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), cat.len());
    }

    #[test]
    fn json_round_trip() {
        for e in builtin_catalog().iter().take(25) {
            let text = to_json(&e.name, &e.datum, &e.notes);
            let back = from_json(&text).unwrap();
            assert_eq!(back.name, e.name);
            assert_eq!(back.datum, e.datum);
        }
    }

    #[test]
    fn load_rejects_bad_unit() {
        let md = ising(1, 1).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&to_json("x", &md, "")).unwrap();
        v["S"][0][0] = serde_json::json!({"n": 1, "c": [["2", "1"]]});
        let err = from_json(&v.to_string()).unwrap_err();
        assert!(err.to_string().contains("unit normalization"), "{err}");
    }
}
