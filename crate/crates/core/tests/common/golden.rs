//! Access to the golden corpus under `tests/corpus` and certificate
//! mutation helpers.

use std::fs;
use std::path::{Path, PathBuf};

use trscert::{CarrierKind, Certificate, Domain, Matrix, ProofStep, Scalar, Value};

use super::laws::{payload, scalar_of, unit};

pub struct Golden {
    pub name: String,
    pub trs: String,
    pub cert: String,
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

pub fn load(kind: &str) -> Vec<Golden> {
    let dir = corpus_dir().join(kind);
    let mut names: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "json").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| Golden {
            trs: fs::read_to_string(dir.join(format!("{name}.trs"))).unwrap(),
            cert: fs::read_to_string(dir.join(format!("{name}.json"))).unwrap(),
            name,
        })
        .collect()
}

pub fn parse(g: &Golden) -> Certificate {
    let trs = trscert::parse_trs(&g.trs).unwrap_or_else(|e| panic!("{}: {e}", g.name));
    trscert::parse_cert(&g.cert, &trs).unwrap_or_else(|e| panic!("{}: {e}", g.name))
}

fn perturbations(d: &Domain, s: &Scalar) -> Vec<Scalar> {
    let base = d.base();
    let mut out = vec![base.zero(), base.one()];
    if let Some(p) = payload(s) {
        let u = unit(base);
        for v in [p.checked_add(u).unwrap(), p.checked_sub(u).unwrap()] {
            let natural = matches!(base.kind(), CarrierKind::Nat | CarrierKind::ArcticNat);
            if !(natural && v.is_negative()) {
                out.push(scalar_of(base, v));
            }
        }
    }
    if let Some(inf) = base.neg_inf() {
        out.push(inf);
    }
    out.retain(|c| c != s);
    out.dedup();
    out
}

/// Every single-entry perturbation of every coefficient of every step.
pub fn mutations(cert: &Certificate) -> Vec<(String, Certificate)> {
    let mut out = Vec::new();
    for (k, step) in cert.steps.iter().enumerate() {
        let ProofStep::Removal(r) = step else { continue };
        let d = r.interpretation.domain;
        for (sym, coeffs) in &r.interpretation.symbols {
            for (ci, c) in coeffs.iter().enumerate() {
                let entries: Vec<Scalar> = match c {
                    Value::Scalar(s) => vec![*s],
                    Value::Matrix(m) => m.entries().to_vec(),
                };
                for (ei, e) in entries.iter().enumerate() {
                    for new in perturbations(&d, e) {
                        let value = match c {
                            Value::Scalar(_) => Value::Scalar(new),
                            Value::Matrix(m) => {
                                let mut m: Matrix = m.clone();
                                m.set(ei / m.dim(), ei % m.dim(), new);
                                Value::Matrix(m)
                            }
                        };
                        let mut mutated = cert.clone();
                        let ProofStep::Removal(mr) = &mut mutated.steps[k] else { unreachable!() };
                        mr.interpretation.symbols.get_mut(sym).unwrap()[ci] = value;
                        out.push((format!("step {k}, {sym}[{ci}] entry {ei}: {e} -> {new}"), mutated));
                    }
                }
            }
        }
    }
    out
}
