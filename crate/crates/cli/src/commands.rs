use std::fmt;
use std::path::Path;

use anyhow::{bail, Result};
use clap::ValueEnum;
use serde_json::{json, Value};

use mdtk::bounds::bound_check;
use mdtk::catalog::{self, builtin_catalog, CatalogEntry};
use mdtk::construct::{
    deligne_product, double_abelian, fibonacci, ising, pointed, so5_level9, MetricGroup,
};
use mdtk::galois::{bar_category, conjugate_category, verify_galois_identities, GaloisAction};
use mdtk::modular::GaussSign;
use mdtk::ModularDatum;

use crate::{Command, Family};

/// Bad arguments or unreadable input; mapped to exit code 2.
#[derive(Debug)]
pub struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn load(spec: &str) -> Result<CatalogEntry> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return catalog::builtin(name).ok_or_else(|| input(format!("no builtin named {name:?}")));
    }
    catalog::load(Path::new(spec)).map_err(|e| input(format!("{spec}: {e}")))
}

fn emit(json: bool, value: Value, human: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("json value")
        );
    } else {
        print!("{}", human());
    }
}

fn write_datum(md: &ModularDatum, name: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => catalog::save(md, name, path).map_err(|e| input(e.to_string())),
        None => {
            println!("{}", catalog::to_json(name, md, ""));
            Ok(())
        }
    }
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| input(format!("{family} needs --{flag}")))
}

fn lines<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| format!("{x}\n")).collect()
}

pub fn run(command: Command, json: bool) -> Result<bool> {
    match command {
        Command::Construct {
            family,
            n,
            j,
            eps,
            orders,
            metric,
            name,
            output,
        } => {
            let md = match family {
                Family::Pointed => {
                    let mg = match metric {
                        Some(path) => {
                            let text = std::fs::read_to_string(&path)
                                .map_err(|e| input(format!("{}: {e}", path.display())))?;
                            serde_json::from_str::<MetricGroup>(&text)
                                .map_err(|e| input(format!("{}: {e}", path.display())))?
                        }
                        None => {
                            MetricGroup::cyclic_standard(need(n, "n", "pointed")?, j.unwrap_or(1))
                                .map_err(|e| input(e.to_string()))?
                        }
                    };
                    pointed(&mg)
                }
                Family::Ising => {
                    ising(need(j, "j", "ising")?, eps).map_err(|e| input(e.to_string()))?
                }
                Family::Fibonacci => {
                    fibonacci(need(j, "j", "fibonacci")?).map_err(|e| input(e.to_string()))?
                }
                Family::So5level9 => {
                    so5_level9(need(j, "j", "so5level9")?).map_err(|e| input(e.to_string()))?
                }
                Family::DoubleAbelian => {
                    if orders.is_empty() {
                        bail!(input("double-abelian needs --orders"));
                    }
                    double_abelian(&orders).map_err(|e| input(e.to_string()))?
                }
            };
            let name = name.unwrap_or_else(|| {
                family
                    .to_possible_value()
                    .expect("named")
                    .get_name()
                    .to_string()
            });
            write_datum(&md, &name, output.as_deref())?;
            Ok(true)
        }
        Command::Verify { datum } => {
            let e = load(&datum)?;
            let report = e.datum.verify();
            emit(json, json!({ "name": e.name, "report": report }), || {
                format!("{}\n{report}", e.name)
            });
            Ok(report.all_passed())
        }
        Command::Report { datum } => report(&load(&datum)?, json),
        Command::Fusion { datum } => {
            let e = load(&datum)?;
            let ft = e.datum.verlinde_fusion()?;
            let labels = e.datum.labels();
            let r = ft.rank();
            let mut rules = Vec::new();
            for x in 0..r {
                for y in x..r {
                    let terms: Vec<String> = (0..r)
                        .filter(|&z| ft.get(x, y, z) > 0)
                        .map(|z| match ft.get(x, y, z) {
                            1 => labels[z].clone(),
                            m => format!("{m}{}", labels[z]),
                        })
                        .collect();
                    rules.push((labels[x].clone(), labels[y].clone(), terms.join(" + ")));
                }
            }
            emit(json, json!({ "labels": labels, "N": ft }), || {
                lines(rules.iter().map(|(x, y, rhs)| format!("{x} ⊗ {y} = {rhs}")))
            });
            Ok(true)
        }
        Command::Orbits { datum } => orbits(&load(&datum)?, json),
        Command::Conjugate { datum, k, output } => {
            let e = load(&datum)?;
            let md = if k == -1 {
                bar_category(&e.datum)?
            } else {
                conjugate_category(&e.datum, k)?
            };
            write_datum(&md, &format!("{}-conj{k}", e.name), output.as_deref())?;
            Ok(true)
        }
        Command::Product { a, b, output } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let md = deligne_product(&a.datum, &b.datum);
            write_datum(&md, &format!("{}-x-{}", a.name, b.name), output.as_deref())?;
            Ok(true)
        }
        Command::BoundCheck { datum } => {
            let e = load(&datum)?;
            let v = bound_check(&e.datum)?;
            emit(
                json,
                json!({ "name": e.name, "verdict": v, "summary": v.to_string() }),
                || format!("{}\n", v),
            );
            Ok(v.bound_holds)
        }
        Command::Catalog { all, list, export } => {
            let cat = builtin_catalog();
            if list {
                emit(
                    json,
                    json!(cat
                        .iter()
                        .map(|e| json!({"name": e.name, "rank": e.datum.rank(), "notes": e.notes}))
                        .collect::<Vec<_>>()),
                    || {
                        lines(cat.iter().map(|e| {
                            format!("{:<22} rank {:>3}  {}", e.name, e.datum.rank(), e.notes)
                        }))
                    },
                );
                return Ok(true);
            }
            if let Some(dir) = export {
                std::fs::create_dir_all(&dir)
                    .map_err(|e| input(format!("{}: {e}", dir.display())))?;
                for e in &cat {
                    let path = dir.join(format!("{}.json", e.name));
                    std::fs::write(&path, catalog::to_json(&e.name, &e.datum, &e.notes) + "\n")
                        .map_err(|err| input(format!("{}: {err}", path.display())))?;
                }
                return Ok(true);
            }
            if !all {
                bail!(input("catalog needs one of --all, --list, --export <dir>"));
            }
            let summary = catalog::sweep(&cat);
            emit(json, serde_json::to_value(&summary)?, || summary.table());
            Ok(summary.all_passed())
        }
    }
}

fn report(e: &CatalogEntry, json: bool) -> Result<bool> {
    let md = &e.datum;
    let mut ok = true;
    let mut field = |r: mdtk::Result<String>| {
        r.unwrap_or_else(|err| {
            ok = false;
            format!("error: {err}")
        })
    };
    let dims: Vec<String> = md.dims().iter().map(ToString::to_string).collect();
    let ndim = field(md.ndim().map(|v| v.to_string()));
    let nt = md.normalized_t_order();
    let gamma = field(
        nt.as_ref()
            .map(|(g, _)| g.to_string())
            .map_err(Clone::clone),
    );
    let n_t = field(
        nt.as_ref()
            .map(|(_, n)| n.to_string())
            .map_err(Clone::clone),
    );
    let anomaly = field(md.anomaly().map(|x| x.to_string()));
    let fp = md.fpdim_pseudounitary();
    let pseudo = field(
        fp.as_ref()
            .map(|f| f.pseudounitary.to_string())
            .map_err(Clone::clone),
    );
    let fpdim = field(
        fp.as_ref()
            .map(|f| format!("{:.9}", f.global))
            .map_err(Clone::clone),
    );
    let invertibles = field(md.verlinde_fusion().map(|ft| {
        ft.invertibles()
            .iter()
            .map(|&x| md.labels()[x].clone())
            .collect::<Vec<_>>()
            .join(", ")
    }));
    let rows: Vec<(&str, String)> = vec![
        ("rank", md.rank().to_string()),
        ("dim(C)", md.global_dim().to_string()),
        ("Ndim", ndim),
        ("FSexp", md.fs_exponent().to_string()),
        ("gamma", gamma),
        ("n_t", n_t),
        ("anomaly", anomaly),
        ("tau_1^+", md.gauss_sum(1, GaussSign::Plus).to_string()),
        ("tau_1^-", md.gauss_sum(1, GaussSign::Minus).to_string()),
        ("FPdim(C)", fpdim),
        ("pseudounitary", pseudo),
        ("invertibles", invertibles),
    ];
    let mut obj = serde_json::Map::new();
    obj.insert("name".into(), json!(e.name));
    obj.insert(
        "dims".into(),
        json!(md
            .labels()
            .iter()
            .zip(&dims)
            .map(|(l, d)| json!([l, d]))
            .collect::<Vec<_>>()),
    );
    for (k, v) in &rows {
        obj.insert((*k).into(), json!(v));
    }
    emit(json, Value::Object(obj), || {
        let mut s = format!("{}\n", e.name);
        for (l, d) in md.labels().iter().zip(&dims) {
            s += &format!("  dim({l}) = {d}\n");
        }
        for (k, v) in &rows {
            s += &format!("{k:<14} {v}\n");
        }
        s
    });
    Ok(ok)
}

fn orbits(e: &CatalogEntry, json: bool) -> Result<bool> {
    let md = &e.datum;
    let action = GaloisAction::new(md)?;
    let name = |xs: &[usize]| {
        xs.iter()
            .map(|&x| md.labels()[x].clone())
            .collect::<Vec<_>>()
    };
    let dim_sum = |xs: &[usize]| {
        xs.iter().fold(mdtk::Cyc::zero(), |acc, &x| {
            acc + &md.dims()[x] * &md.dims()[x]
        })
    };
    let orbits = action.orbits()?;
    let mut t_orbits = Vec::new();
    for x in 0..md.rank() {
        let (members, dim) = action.orbit_t(x)?;
        t_orbits.push((md.labels()[x].clone(), name(&members), dim));
    }
    let checks = verify_galois_identities(md);
    let value = json!({
        "name": e.name,
        "conductor": action.conductor(),
        "orbits": orbits.iter().map(|o| json!({"members": name(o), "dim": dim_sum(o).to_string()})).collect::<Vec<_>>(),
        "t_orbits": t_orbits.iter().map(|(x, m, d)| json!({"object": x, "members": m, "dim": d.to_string()})).collect::<Vec<_>>(),
        "checks": checks,
    });
    emit(json, value, || {
        let mut s = format!("{}  (working conductor {})\n", e.name, action.conductor());
        for o in &orbits {
            s += &format!("orbit {{{}}}  dim {}\n", name(o).join(", "), dim_sum(o));
        }
        for (x, m, d) in &t_orbits {
            s += &format!("O^t({x}) = {{{}}}  dim {d}\n", m.join(", "));
        }
        s + &checks.to_string()
    });
    Ok(checks.all_passed())
}
