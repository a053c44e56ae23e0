//! Subcommand implementations, kept separate from argument parsing so they
//! can be driven from tests.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use trscert::frontend::{search_interpretation, SearchConfig, SearchError};
use trscert::interp::Orientation;
use trscert::{
    check_certificate, parse_cert, parse_trs, render_cert, CarrierKind, CarrierSpec, Certificate,
    Domain, MatrixSpec, Problem, ProofStep, Rational, Regime, TrsFile, Verdict,
};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// What a command wants printed, and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn input_error(message: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
            code: EXIT_INPUT,
        }
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path)
        .map_err(|e| Outcome::input_error(format!("cannot read {}: {e}", path.display())))
}

fn load_trs(path: &Path) -> Result<TrsFile, Outcome> {
    parse_trs(&read(path)?).map_err(|e| Outcome::input_error(format!("{}:{e}", path.display())))
}

fn load(trs_path: &Path, cert_path: &Path) -> Result<(TrsFile, Certificate), Outcome> {
    let trs = load_trs(trs_path)?;
    let cert = parse_cert(&read(cert_path)?, &trs)
        .map_err(|e| Outcome::input_error(format!("{}: {e}", cert_path.display())))?;
    Ok((trs, cert))
}

pub fn certify(trs_path: &Path, cert_path: &Path) -> Outcome {
    let (_, cert) = match load(trs_path, cert_path) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let verdict = check_certificate(&cert);
    let mut out = String::new();
    match &verdict {
        Verdict::Certified { warnings } => {
            out.push_str("CERTIFIED\n");
            for w in warnings {
                let _ = writeln!(out, "warning: {w}");
            }
        }
        Verdict::Rejected(r) => {
            let _ = writeln!(out, "REJECTED\n{r}");
        }
        Verdict::Unsupported(what) => {
            let _ = writeln!(out, "UNSUPPORTED\n{what}");
        }
    }
    Outcome::ok(out, verdict.exit_code())
}

/// Prints the interpretation of every rule still present before `step`.
pub fn orient(trs_path: &Path, cert_path: &Path, step: usize) -> Outcome {
    let (_, cert) = match load(trs_path, cert_path) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let interp = match cert.steps.get(step) {
        None => {
            return Outcome::input_error(format!(
                "step {step} out of range (certificate has {} steps)",
                cert.steps.len()
            ))
        }
        Some(ProofStep::Unsupported { regime, carrier }) => {
            return Outcome::ok(
                format!("UNSUPPORTED\nstep {step}: regime `{regime}` over carrier `{carrier}`\n"),
                EXIT_UNSUPPORTED,
            )
        }
        Some(ProofStep::Removal(s)) => &s.interpretation,
    };
    if !interp.combination_supported() {
        return Outcome::ok(
            format!("UNSUPPORTED\nregime {} over carrier {}\n", interp.regime, interp.domain),
            EXIT_UNSUPPORTED,
        );
    }
    let mut out = format!("step {step}: {} over {}\n", interp.regime, interp.domain);
    for (i, rule) in cert.remaining_before(step) {
        let _ = writeln!(out, "[{i}] {rule}");
        match interp.orient_report(rule) {
            Ok(r) => {
                let _ = writeln!(
                    out,
                    "    {}  {}  {}  [{}]",
                    r.lhs.render(&interp.domain),
                    r.orientation.symbol(),
                    r.rhs.render(&interp.domain),
                    r.orientation
                );
            }
            Err(e) => {
                let _ = writeln!(out, "    cannot evaluate: {e}  [{}]", Orientation::Unoriented);
            }
        }
    }
    Outcome::ok(out, 0)
}

#[derive(Debug, Clone)]
pub struct SearchArgs {
    pub regime: String,
    pub carrier: String,
    pub grid: Vec<String>,
    pub dim: Option<usize>,
    pub sd: Option<usize>,
    pub delta: Option<String>,
    pub ordered: bool,
    pub max_steps: Option<usize>,
    pub budget: Option<u64>,
}

fn search_config(args: &SearchArgs) -> Result<SearchConfig, String> {
    let regime: Regime = args.regime.parse().map_err(|e| format!("{e}"))?;
    let kind: CarrierKind = args.carrier.parse().map_err(|e| format!("{e}"))?;
    let delta = args
        .delta
        .as_deref()
        .map(|d| d.parse::<Rational>().map_err(|e| format!("--delta: {e}")))
        .transpose()?;
    let carrier = CarrierSpec::new(kind, delta).map_err(|e| e.to_string())?;
    let domain = match args.dim {
        None if args.sd.is_some() => return Err("--sd requires --dim".into()),
        None => Domain::Scalar(carrier.clone()),
        Some(n) => Domain::Matrix(MatrixSpec::new(carrier.clone(), n, args.sd).map_err(|e| e.to_string())?),
    };
    let grid = args
        .grid
        .iter()
        .map(|v| carrier.parse_scalar(v).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cfg = SearchConfig::new(regime, domain, grid);
    if let Some(n) = args.max_steps {
        cfg.max_steps = n;
    }
    if let Some(b) = args.budget {
        cfg.budget = b;
    }
    Ok(cfg)
}

/// Searches for a certificate and prints it as JSON. With `ordered`, the
/// rules of the file become the pairs of an ordered problem while still
/// counting as its rules, so the output certifies against the same file.
pub fn search(trs_path: &Path, args: &SearchArgs) -> Outcome {
    let trs = match load_trs(trs_path) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let cfg = match search_config(args) {
        Ok(c) => c,
        Err(e) => return Outcome::input_error(e),
    };
    let problem = if args.ordered {
        Problem::Ordered {
            pairs: trs.trs.rules().to_vec(),
            rules: trs.trs.rules().to_vec(),
        }
    } else {
        Problem::Termination(trs.trs.clone())
    };
    match search_interpretation(&problem, &cfg) {
        Ok(cert) => Outcome::ok(render_cert(&cert) + "\n", 0),
        Err(e @ (SearchError::NotFound(_) | SearchError::BudgetExceeded(_))) => Outcome {
            stdout: "NOT FOUND\n".into(),
            stderr: format!("{e}\n"),
            code: 1,
        },
        Err(e) => Outcome::input_error(e.to_string()),
    }
}
