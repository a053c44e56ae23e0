//! Brute-force interpretation search for small problems.
//!
//! Every coefficient entry ranges over a finite grid; candidates are
//! enumerated with an odometer whose first slot varies slowest, so results
//! are deterministic. Each accepted step is validated by the checker before
//! it is kept, and the final certificate is checked once more.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::Scalar;
use crate::checker::{
    check_certificate, check_pair_removal, check_rule_removal, Certificate, IndexedRule, Problem,
    ProofStep, RemovalStep, Verdict,
};
use crate::interp::{Interpretation, Orientation, Regime};
use crate::matrices::{Domain, Matrix, Value};
use crate::terms::Signature;

pub const MAX_RULES: usize = 6;
pub const MAX_SYMBOLS: usize = 4;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub regime: Regime,
    pub domain: Domain,
    pub grid: Vec<Scalar>,
    pub max_steps: usize,
    /// Total number of candidate interpretations tried across all steps.
    pub budget: u64,
}

impl SearchConfig {
    pub fn new(regime: Regime, domain: Domain, grid: Vec<Scalar>) -> Self {
        SearchConfig {
            regime,
            domain,
            grid,
            max_steps: 8,
            budget: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub candidates: u64,
    pub steps: usize,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} candidates, {} steps found", self.candidates, self.steps)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("problem too large for search: {rules} rules, {symbols} symbols (limits {MAX_RULES}, {MAX_SYMBOLS})")]
    TooLarge { rules: usize, symbols: usize },
    #[error("empty grid")]
    EmptyGrid,
    #[error("grid value {0} is not in the carrier")]
    GridOutsideCarrier(String),
    #[error("regime {regime} over {domain} is not usable here: {reason}")]
    Unusable {
        regime: Regime,
        domain: String,
        reason: &'static str,
    },
    #[error("no interpretation found ({0})")]
    NotFound(SearchStats),
    #[error("search budget exhausted ({0})")]
    BudgetExceeded(SearchStats),
    #[error("internal error: searched certificate was not certified: {0:?}")]
    Inconsistent(Verdict),
}

/// One grid position. Matrix entries of the same coefficient are
/// consecutive slots in row-major order.
#[derive(Debug, Clone, Copy)]
struct Slot {
    symbol: usize,
    coeff: usize,
}

struct Odometer {
    digits: Vec<usize>,
    base: usize,
    done: bool,
}

impl Odometer {
    fn new(len: usize, base: usize) -> Self {
        Odometer {
            digits: vec![0; len],
            base,
            done: false,
        }
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.base {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }
}

fn build(
    cfg: &SearchConfig,
    monotone: bool,
    symbols: &[(String, usize)],
    slots: &[Slot],
    digits: &[usize],
) -> Interpretation {
    let entries = match &cfg.domain {
        Domain::Scalar(_) => 1,
        Domain::Matrix(m) => m.dim() * m.dim(),
    };
    let mut raw: Vec<Vec<Vec<Scalar>>> = symbols
        .iter()
        .map(|(_, n)| vec![Vec::with_capacity(entries); n + 1])
        .collect();
    for (slot, &d) in slots.iter().zip(digits) {
        raw[slot.symbol][slot.coeff].push(cfg.grid[d].clone());
    }
    let mut interp = Interpretation::new(cfg.domain.clone(), cfg.regime, monotone);
    for ((name, _), coeffs) in symbols.iter().zip(raw) {
        let values = coeffs
            .into_iter()
            .map(|es| match &cfg.domain {
                Domain::Scalar(_) => Value::Scalar(es.into_iter().next().expect("one entry")),
                Domain::Matrix(m) => {
                    let n = m.dim();
                    let rows = es.chunks(n).map(<[Scalar]>::to_vec).collect();
                    Value::Matrix(Matrix::from_rows(rows).expect("square by construction"))
                }
            })
            .collect();
        interp.symbols.insert(name.clone(), values);
    }
    interp
}

/// Rules a candidate could remove, or `None` if something is not even
/// weakly oriented.
fn strict_candidates(
    interp: &Interpretation,
    removable: &[IndexedRule],
    fixed: &[IndexedRule],
) -> Option<BTreeSet<usize>> {
    let mut strict = BTreeSet::new();
    for &(_, rule) in fixed {
        if !interp.orient(rule).ok()?.is_weak_or_better() {
            return None;
        }
    }
    for &(i, rule) in removable {
        match interp.orient(rule).ok()? {
            Orientation::Strict => {
                strict.insert(i);
            }
            Orientation::Weak => {}
            Orientation::Unoriented => return None,
        }
    }
    Some(strict)
}

/// Searches for a certificate of `problem` made only of steps drawn from
/// the grid described by `cfg`.
pub fn search_interpretation(
    problem: &Problem,
    cfg: &SearchConfig,
) -> Result<Certificate, SearchError> {
    let all = problem.indexed_rules();
    let sig = problem.signature().map_err(|_| SearchError::NotFound(SearchStats::default()))?;
    if all.len() > MAX_RULES || sig.len() > MAX_SYMBOLS {
        return Err(SearchError::TooLarge {
            rules: all.len(),
            symbols: sig.len(),
        });
    }
    if cfg.grid.is_empty() {
        return Err(SearchError::EmptyGrid);
    }
    if let Some(v) = cfg.grid.iter().find(|v| !cfg.domain.base().contains(v)) {
        return Err(SearchError::GridOutsideCarrier(v.to_string()));
    }
    let unusable = |reason| SearchError::Unusable {
        regime: cfg.regime,
        domain: cfg.domain.to_string(),
        reason,
    };
    if !Interpretation::new(cfg.domain.clone(), cfg.regime, false).combination_supported() {
        return Err(unusable("unsupported regime/carrier combination"));
    }
    let monotone = !problem.is_ordered();
    if monotone && cfg.regime != Regime::Plain {
        return Err(unusable("rule removal needs a monotone plain interpretation"));
    }

    let (mut removable, fixed): (Vec<IndexedRule>, Vec<IndexedRule>) = match problem {
        Problem::Termination(_) => (all, Vec::new()),
        Problem::Ordered { pairs, .. } => {
            let n = pairs.len();
            all.into_iter().partition(|(i, _)| *i < n)
        }
    };
    let entries = match &cfg.domain {
        Domain::Scalar(_) => 1,
        Domain::Matrix(m) => m.dim() * m.dim(),
    };

    let mut stats = SearchStats::default();
    let mut steps = Vec::new();
    while !removable.is_empty() {
        if steps.len() == cfg.max_steps {
            return Err(SearchError::NotFound(stats));
        }
        let current: Vec<IndexedRule> = removable.iter().chain(&fixed).copied().collect();
        let sig = Signature::of_rules(current.iter().map(|(_, r)| *r))
            .expect("signature of a subset of a consistent problem");
        let symbols: Vec<(String, usize)> = sig.iter().map(|(s, n)| (s.to_string(), n)).collect();
        let slots: Vec<Slot> = symbols
            .iter()
            .enumerate()
            .flat_map(|(symbol, (_, n))| {
                (0..=*n).flat_map(move |coeff| {
                    (0..entries).map(move |_| Slot { symbol, coeff })
                })
            })
            .collect();

        let mut found = None;
        let mut odo = Odometer::new(slots.len(), cfg.grid.len());
        while !odo.done {
            if stats.candidates >= cfg.budget {
                return Err(SearchError::BudgetExceeded(stats));
            }
            stats.candidates += 1;
            let interp = build(cfg, monotone, &symbols, &slots, &odo.digits);
            odo.advance();
            if interp.check_well_formed(&sig).is_err() {
                continue;
            }
            let Some(strict) = strict_candidates(&interp, &removable, &fixed) else {
                continue;
            };
            if strict.is_empty() {
                continue;
            }
            let step = RemovalStep {
                interpretation: interp,
                strict,
            };
            let rest = if problem.is_ordered() {
                check_pair_removal(&step, &removable, &fixed)
            } else {
                check_rule_removal(&step, &removable)
            };
            if let Ok(rest) = rest {
                found = Some((step, rest));
                break;
            }
        }
        let Some((step, rest)) = found else {
            return Err(SearchError::NotFound(stats));
        };
        removable = rest;
        steps.push(ProofStep::Removal(step));
        stats.steps += 1;
    }

    let cert = Certificate {
        problem: problem.clone(),
        steps,
    };
    match check_certificate(&cert) {
        Verdict::Certified { .. } => Ok(cert),
        other => Err(SearchError::Inconsistent(other)),
    }
}
