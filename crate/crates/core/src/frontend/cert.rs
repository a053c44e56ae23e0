//! JSON certificate format.
//!
//! ```json
//! {
//!   "problem": "ordered",
//!   "pairs": ["s(x) -> p(half(s(s(x))))"],
//!   "steps": [{
//!     "regime": "negconst", "carrier": "rat", "delta": "1/2",
//!     "interpretation": { "half": ["1/2", "1/2"], "p": ["-1", "1"], "s": ["1", "1"] },
//!     "strict": [0]
//!   }]
//! }
//! ```
//!
//! The rules of the problem always come from the accompanying TRS file.
//! Matrix coefficients are nested row arrays; a bare scalar is accepted as
//! shorthand for the matrix with that scalar on the diagonal.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::trs_parser::{parse_rule, TrsFile};
use crate::algebra::{CarrierKind, CarrierSpec, Scalar};
use crate::checker::{Certificate, Problem, ProofStep, RemovalStep};
use crate::interp::{Interpretation, Regime};
use crate::matrices::{Domain, Matrix, MatrixSpec, Value};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("invalid JSON at {line}:{column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

fn schema(path: impl Into<String>, message: impl ToString) -> CertError {
    CertError::Schema {
        path: path.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertDoc {
    problem: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<String>>,
    steps: Vec<StepDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepDoc {
    regime: String,
    carrier: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<MatrixDoc>,
    #[serde(default)]
    monotone: bool,
    #[serde(default)]
    interpretation: BTreeMap<String, Vec<CoeffDoc>>,
    #[serde(default)]
    strict: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sd: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffDoc {
    Scalar(Lit),
    Matrix(Vec<Vec<Lit>>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Lit {
    Int(i64),
    Str(String),
}

impl Lit {
    fn of(s: &Scalar) -> Lit {
        Lit::Str(s.to_string())
    }

    fn parse(&self, carrier: &CarrierSpec, path: &str) -> Result<Scalar, CertError> {
        let parsed = match self {
            Lit::Int(n) => carrier.parse_scalar(&n.to_string()),
            Lit::Str(s) => carrier.parse_scalar(s),
        };
        parsed.map_err(|e| schema(path, e))
    }
}

fn parse_coeff(doc: &CoeffDoc, domain: &Domain, path: &str) -> Result<Value, CertError> {
    match (domain, doc) {
        (Domain::Scalar(c), CoeffDoc::Scalar(l)) => Ok(Value::Scalar(l.parse(c, path)?)),
        (Domain::Scalar(_), CoeffDoc::Matrix(_)) => {
            Err(schema(path, "matrix coefficient over a scalar carrier"))
        }
        (Domain::Matrix(m), CoeffDoc::Scalar(l)) => {
            Ok(Value::Matrix(m.diagonal(l.parse(m.base(), path)?)))
        }
        (Domain::Matrix(m), CoeffDoc::Matrix(rows)) => {
            let n = m.dim();
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(schema(path, format!("expected a {n}x{n} matrix")));
            }
            let rows = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, l)| l.parse(m.base(), &format!("{path}[{i}][{j}]")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Matrix::from_rows(rows)
                .map(Value::Matrix)
                .map_err(|e| schema(path, e))
        }
    }
}

fn parse_step(doc: &StepDoc, path: &str) -> Result<ProofStep, CertError> {
    let unsupported = || ProofStep::Unsupported {
        regime: doc.regime.clone(),
        carrier: doc.carrier.clone(),
    };
    let (Ok(regime), Ok(kind)) = (doc.regime.parse::<Regime>(), doc.carrier.parse::<CarrierKind>())
    else {
        return Ok(unsupported());
    };
    let delta = match (&doc.delta, kind.needs_delta()) {
        (Some(d), true) => Some(
            d.parse::<Rational>()
                .map_err(|e| schema(format!("{path}.delta"), e))?,
        ),
        (None, false) => None,
        (None, true) => return Err(schema(path, format!("carrier {kind} requires a delta"))),
        (Some(_), false) => {
            return Err(schema(format!("{path}.delta"), format!("carrier {kind} takes no delta")))
        }
    };
    let carrier = CarrierSpec::new(kind, delta).map_err(|e| schema(format!("{path}.delta"), e))?;
    let domain = match &doc.matrix {
        None => Domain::Scalar(carrier),
        Some(m) => Domain::Matrix(
            MatrixSpec::new(carrier, m.dim, m.sd).map_err(|e| schema(format!("{path}.matrix"), e))?,
        ),
    };
    let mut interpretation = Interpretation::new(domain, regime, doc.monotone);
    for (sym, coeffs) in &doc.interpretation {
        let values = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                parse_coeff(c, &interpretation.domain, &format!("{path}.interpretation.{sym}[{i}]"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        interpretation.symbols.insert(sym.clone(), values);
    }
    let mut strict = BTreeSet::new();
    for &i in &doc.strict {
        if !strict.insert(i) {
            return Err(schema(format!("{path}.strict"), format!("duplicate index {i}")));
        }
    }
    Ok(ProofStep::Removal(RemovalStep {
        interpretation,
        strict,
    }))
}

/// Parses a certificate for the problem over `trs`.
pub fn parse_cert(text: &str, trs: &TrsFile) -> Result<Certificate, CertError> {
    let doc: CertDoc = serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            schema("$", e)
        } else {
            CertError::Json {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        }
    })?;
    let problem = match (doc.problem.as_str(), &doc.pairs) {
        ("term", None) => Problem::Termination(trs.trs.clone()),
        ("term", Some(_)) => return Err(schema("pairs", "only ordered problems have pairs")),
        ("ordered", pairs) => {
            let pairs = pairs
                .iter()
                .flatten()
                .enumerate()
                .map(|(i, p)| {
                    parse_rule(p, &trs.variables).map_err(|e| schema(format!("pairs[{i}]"), e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Problem::Ordered {
                pairs,
                rules: trs.trs.rules().to_vec(),
            }
        }
        (other, _) => {
            return Err(schema(
                "problem",
                format!("expected \"term\" or \"ordered\", found {other:?}"),
            ))
        }
    };
    let steps = doc
        .steps
        .iter()
        .enumerate()
        .map(|(k, s)| parse_step(s, &format!("steps[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Certificate { problem, steps })
}

fn render_value(v: &Value) -> CoeffDoc {
    match v {
        Value::Scalar(s) => CoeffDoc::Scalar(Lit::of(s)),
        Value::Matrix(m) => CoeffDoc::Matrix(m.rows().map(|r| r.iter().map(Lit::of).collect()).collect()),
    }
}

fn render_step(step: &ProofStep) -> StepDoc {
    match step {
        ProofStep::Unsupported { regime, carrier } => StepDoc {
            regime: regime.clone(),
            carrier: carrier.clone(),
            delta: None,
            matrix: None,
            monotone: false,
            interpretation: BTreeMap::new(),
            strict: Vec::new(),
        },
        ProofStep::Removal(r) => {
            let i = &r.interpretation;
            let base = i.domain.base();
            StepDoc {
                regime: i.regime.name().to_string(),
                carrier: base.kind().name().to_string(),
                delta: base.delta().map(|d| d.to_string()),
                matrix: match &i.domain {
                    Domain::Scalar(_) => None,
                    Domain::Matrix(m) => Some(MatrixDoc {
                        dim: m.dim(),
                        sd: m.sd(),
                    }),
                },
                monotone: i.monotone,
                interpretation: i
                    .symbols
                    .iter()
                    .map(|(s, cs)| (s.clone(), cs.iter().map(render_value).collect()))
                    .collect(),
                strict: r.strict.iter().copied().collect(),
            }
        }
    }
}

/// Renders `cert` as JSON. The rules of the problem are not included.
pub fn render_cert(cert: &Certificate) -> String {
    let (problem, pairs) = match &cert.problem {
        Problem::Termination(_) => ("term", None),
        Problem::Ordered { pairs, .. } => (
            "ordered",
            Some(pairs.iter().map(|p| p.to_string()).collect()),
        ),
    };
    let doc = CertDoc {
        problem: problem.to_string(),
        pairs,
        steps: cert.steps.iter().map(render_step).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("certificate documents always serialize")
}
