//! Certificate validation.
//!
//! A certificate is a linear list of removal steps. On a termination problem
//! every step must use a monotone reduction pair (plain regime with a
//! monotonicity claim) and may delete the rules it orients strictly. On an
//! ordered problem `(P, R)` any supported regime may be used, everything must
//! be weakly oriented, and only members of `P` may be deleted. The problem is
//! certified once nothing removable is left.
//!
//! Rule indices are stable across steps: for termination problems they index
//! the original rule list; for ordered problems the pairs come first
//! (`0..|P|`) and the rules after them (`|P|..|P|+|R|`).

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::AlgebraError;
use crate::interp::{InterpError, Interpretation, Orientation, Regime, WellFormedViolation};
use crate::terms::{Rule, Signature, TermError, Trs};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    /// Prove `SN(R)`.
    Termination(Trs),
    /// Remove all of `pairs` while keeping `pairs ∪ rules` weakly oriented.
    Ordered { pairs: Vec<Rule>, rules: Vec<Rule> },
}

impl Problem {
    /// All rules in index order.
    pub fn indexed_rules(&self) -> Vec<(usize, &Rule)> {
        match self {
            Problem::Termination(trs) => trs.rules().iter().enumerate().collect(),
            Problem::Ordered { pairs, rules } => pairs.iter().chain(rules).enumerate().collect(),
        }
    }

    pub fn rule(&self, index: usize) -> Option<&Rule> {
        match self {
            Problem::Termination(trs) => trs.rules().get(index),
            Problem::Ordered { pairs, rules } => pairs.iter().chain(rules).nth(index),
        }
    }

    pub fn signature(&self) -> Result<Signature, TermError> {
        Signature::of_rules(self.indexed_rules().into_iter().map(|(_, r)| r))
    }

    pub fn is_ordered(&self) -> bool {
        matches!(self, Problem::Ordered { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalStep {
    pub interpretation: Interpretation,
    pub strict: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofStep {
    Removal(RemovalStep),
    /// A step whose technique or carrier this checker does not know.
    Unsupported { regime: String, carrier: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub problem: Problem,
    pub steps: Vec<ProofStep>,
}

impl Certificate {
    /// Indices still present before step `k`, assuming every earlier step
    /// removed exactly what it claims. Used for display, not for checking.
    pub fn remaining_before(&self, k: usize) -> Vec<(usize, &Rule)> {
        let removed: BTreeSet<usize> = self.steps[..k.min(self.steps.len())]
            .iter()
            .filter_map(|s| match s {
                ProofStep::Removal(r) => Some(r.strict.iter().copied()),
                ProofStep::Unsupported { .. } => None,
            })
            .flatten()
            .collect();
        self.problem
            .indexed_rules()
            .into_iter()
            .filter(|(i, _)| !removed.contains(i))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Rule(usize),
    WellFormedness,
    Problem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    Admissibility(TermError),
    Signature(TermError),
    WellFormed(WellFormedViolation),
    /// A termination problem needs a monotone reduction pair.
    NoMonotonePair(Regime),
    WeakOrientation,
    StrictOrientation,
    /// A claimed index does not name a rule still present.
    UnknownIndex,
    /// A claimed index names a member of `R` in an ordered problem.
    NotRemovable,
    Evaluation(InterpError),
    ResidualNonEmpty(Vec<usize>),
}

impl Condition {
    pub fn name(&self) -> &'static str {
        match self {
            Condition::Admissibility(_) => "admissibility",
            Condition::Signature(_) => "signature",
            Condition::WellFormed(_) => "well-formedness",
            Condition::NoMonotonePair(_) => "monotone-reduction-pair",
            Condition::WeakOrientation => "weak-orientation",
            Condition::StrictOrientation => "strict-orientation",
            Condition::UnknownIndex => "index-present",
            Condition::NotRemovable => "index-removable",
            Condition::Evaluation(_) => "evaluation",
            Condition::ResidualNonEmpty(_) => "residual-empty",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Admissibility(e) | Condition::Signature(e) => write!(f, "{e}"),
            Condition::WellFormed(v) => write!(f, "{v}"),
            Condition::NoMonotonePair(r) => {
                write!(f, "rule removal needs a monotone plain interpretation, got {r}")
            }
            Condition::WeakOrientation => f.write_str("rule is not weakly oriented"),
            Condition::StrictOrientation => f.write_str("rule claimed strict is not strictly oriented"),
            Condition::UnknownIndex => f.write_str("claimed index does not name a remaining rule"),
            Condition::NotRemovable => f.write_str("only pairs may be removed from an ordered problem"),
            Condition::Evaluation(e) => write!(f, "{e}"),
            Condition::ResidualNonEmpty(idx) => write!(f, "rules {idx:?} remain after the last step"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub target: Target,
    pub condition: Condition,
    /// Rendered polynomials of the failing comparison, if any.
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

impl Violation {
    fn new(target: Target, condition: Condition) -> Self {
        Violation {
            target,
            condition,
            lhs: None,
            rhs: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Input,
    Step(usize),
    /// The terminal "nothing left" claim.
    Final,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub location: Location,
    pub violation: Violation,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.location {
            Location::Input => f.write_str("input")?,
            Location::Step(k) => write!(f, "step {k}")?,
            Location::Final => f.write_str("final")?,
        }
        match &self.violation.target {
            Target::Rule(i) => write!(f, ", rule {i}")?,
            Target::WellFormedness => f.write_str(", well-formedness")?,
            Target::Problem => {}
        }
        write!(f, ": [{}] {}", self.violation.condition.name(), self.violation.condition)?;
        if let (Some(l), Some(r)) = (&self.violation.lhs, &self.violation.rhs) {
            write!(f, " (lhs: {l}; rhs: {r})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Certified { warnings: Vec<String> },
    Rejected(Rejection),
    Unsupported(String),
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }

    pub fn is_rejected(&self) -> bool {
        matches!(self, Verdict::Rejected(_))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Certified { .. } => 0,
            Verdict::Rejected(_) => 1,
            Verdict::Unsupported(_) => 2,
        }
    }
}

/// Why a single step failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepFailure {
    Violation(Violation),
    Unsupported(String),
}

impl From<Violation> for StepFailure {
    fn from(v: Violation) -> Self {
        StepFailure::Violation(v)
    }
}

pub type IndexedRule<'a> = (usize, &'a Rule);

fn unsupported_combination(step: &RemovalStep) -> Option<StepFailure> {
    let i = &step.interpretation;
    (!i.combination_supported()).then(|| {
        StepFailure::Unsupported(format!(
            "regime {} over carrier {}",
            i.regime,
            i.domain
        ))
    })
}

fn eval_failure(target: Target, e: InterpError) -> StepFailure {
    match e {
        InterpError::Algebra(AlgebraError::Overflow(_)) => {
            StepFailure::Unsupported("arithmetic overflow in exact computation".into())
        }
        e => Violation::new(target, Condition::Evaluation(e)).into(),
    }
}

fn check_well_formed(step: &RemovalStep, rules: &[IndexedRule]) -> Result<(), StepFailure> {
    let sig = Signature::of_rules(rules.iter().map(|(_, r)| *r))
        .map_err(|e| Violation::new(Target::Problem, Condition::Signature(e)))?;
    step.interpretation
        .check_well_formed(&sig)
        .map_err(|v| Violation::new(Target::WellFormedness, Condition::WellFormed(v)).into())
}

/// Orients every rule; the first failure in index order wins.
fn check_orientations(
    step: &RemovalStep,
    rules: &[IndexedRule],
    strict: &BTreeSet<usize>,
) -> Result<(), StepFailure> {
    let interp = &step.interpretation;
    let mut ordered: Vec<&IndexedRule> = rules.iter().collect();
    ordered.sort_by_key(|(i, _)| *i);
    for &&(i, rule) in &ordered {
        let report = interp
            .orient_report(rule)
            .map_err(|e| eval_failure(Target::Rule(i), e))?;
        let failed = match report.orientation {
            Orientation::Unoriented => Some(Condition::WeakOrientation),
            Orientation::Weak if strict.contains(&i) => Some(Condition::StrictOrientation),
            _ => None,
        };
        if let Some(condition) = failed {
            return Err(Violation {
                target: Target::Rule(i),
                condition,
                lhs: Some(report.lhs.render(&interp.domain)),
                rhs: Some(report.rhs.render(&interp.domain)),
            }
            .into());
        }
    }
    Ok(())
}

/// One rule-removal step on `SN(R)`: returns the rules that remain.
pub fn check_rule_removal<'a>(
    step: &RemovalStep,
    rules: &[IndexedRule<'a>],
) -> Result<Vec<IndexedRule<'a>>, StepFailure> {
    if let Some(f) = unsupported_combination(step) {
        return Err(f);
    }
    let interp = &step.interpretation;
    if interp.regime != Regime::Plain || !interp.monotone {
        return Err(Violation::new(
            Target::WellFormedness,
            Condition::NoMonotonePair(interp.regime),
        )
        .into());
    }
    check_well_formed(step, rules)?;
    let present: BTreeSet<usize> = rules.iter().map(|(i, _)| *i).collect();
    if let Some(&i) = step.strict.iter().find(|i| !present.contains(i)) {
        return Err(Violation::new(Target::Rule(i), Condition::UnknownIndex).into());
    }
    check_orientations(step, rules, &step.strict)?;
    Ok(rules
        .iter()
        .copied()
        .filter(|(i, _)| !step.strict.contains(i))
        .collect())
}

/// One pair-removal step on an ordered problem: returns the remaining pairs
/// (the rules never change).
pub fn check_pair_removal<'a>(
    step: &RemovalStep,
    pairs: &[IndexedRule<'a>],
    rules: &[IndexedRule<'a>],
) -> Result<Vec<IndexedRule<'a>>, StepFailure> {
    if let Some(f) = unsupported_combination(step) {
        return Err(f);
    }
    let all: Vec<IndexedRule> = pairs.iter().chain(rules).copied().collect();
    check_well_formed(step, &all)?;
    let pair_idx: BTreeSet<usize> = pairs.iter().map(|(i, _)| *i).collect();
    let rule_idx: BTreeSet<usize> = rules.iter().map(|(i, _)| *i).collect();
    for &i in &step.strict {
        if rule_idx.contains(&i) {
            return Err(Violation::new(Target::Rule(i), Condition::NotRemovable).into());
        }
        if !pair_idx.contains(&i) {
            return Err(Violation::new(Target::Rule(i), Condition::UnknownIndex).into());
        }
    }
    check_orientations(step, &all, &step.strict)?;
    Ok(pairs
        .iter()
        .copied()
        .filter(|(i, _)| !step.strict.contains(i))
        .collect())
}

/// Checks a whole certificate. Total: every outcome is a [`Verdict`].
pub fn check_certificate(cert: &Certificate) -> Verdict {
    let reject = |location, violation| Verdict::Rejected(Rejection { location, violation });
    let all = cert.problem.indexed_rules();
    for &(i, rule) in &all {
        if let Err(e) = rule.check_admissible() {
            return reject(
                Location::Input,
                Violation::new(Target::Rule(i), Condition::Admissibility(e)),
            );
        }
    }
    if let Err(e) = cert.problem.signature() {
        return reject(
            Location::Input,
            Violation::new(Target::Problem, Condition::Signature(e)),
        );
    }

    let (mut removable, fixed): (Vec<IndexedRule>, Vec<IndexedRule>) = match &cert.problem {
        Problem::Termination(_) => (all, Vec::new()),
        Problem::Ordered { pairs, .. } => {
            let n = pairs.len();
            all.into_iter().partition(|(i, _)| *i < n)
        }
    };

    let mut warnings = Vec::new();
    for (k, step) in cert.steps.iter().enumerate() {
        let step = match step {
            ProofStep::Removal(s) => s,
            ProofStep::Unsupported { regime, carrier } => {
                return Verdict::Unsupported(format!(
                    "step {k}: regime `{regime}` over carrier `{carrier}`"
                ))
            }
        };
        let outcome = if cert.problem.is_ordered() {
            check_pair_removal(step, &removable, &fixed)
        } else {
            check_rule_removal(step, &removable)
        };
        match outcome {
            Ok(rest) => {
                if rest.len() == removable.len() {
                    warnings.push(format!("step {k} removes no rules"));
                }
                removable = rest;
            }
            Err(StepFailure::Violation(v)) => return reject(Location::Step(k), v),
            Err(StepFailure::Unsupported(what)) => {
                return Verdict::Unsupported(format!("step {k}: {what}"))
            }
        }
    }
    if !removable.is_empty() {
        return reject(
            Location::Final,
            Violation::new(
                Target::Problem,
                Condition::ResidualNonEmpty(removable.iter().map(|(i, _)| *i).collect()),
            ),
        );
    }
    Verdict::Certified { warnings }
}

/// Re-runs only the condition named by `rejection`; `true` if it still fails.
pub fn reproduce(cert: &Certificate, rejection: &Rejection) -> bool {
    let v = &rejection.violation;
    let step = match rejection.location {
        Location::Step(k) => match cert.steps.get(k) {
            Some(ProofStep::Removal(s)) => Some(s),
            _ => return false,
        },
        _ => None,
    };
    match (&v.condition, &v.target, step) {
        (Condition::Admissibility(_), Target::Rule(i), _) => cert
            .problem
            .rule(*i)
            .is_some_and(|r| r.check_admissible().is_err()),
        (Condition::WeakOrientation, Target::Rule(i), Some(s)) => {
            cert.problem.rule(*i).is_some_and(|r| {
                s.interpretation.orient(r).ok() == Some(Orientation::Unoriented)
            })
        }
        (Condition::StrictOrientation, Target::Rule(i), Some(s)) => {
            cert.problem.rule(*i).is_some_and(|r| {
                s.interpretation.orient(r).ok() != Some(Orientation::Strict)
            })
        }
        (Condition::NoMonotonePair(_), _, Some(s)) => {
            s.interpretation.regime != Regime::Plain || !s.interpretation.monotone
        }
        (Condition::WellFormed(w), _, Some(s)) => match (&w.condition, &w.symbol) {
            (crate::interp::WfCondition::MissingSymbol, Some(sym)) => {
                !s.interpretation.symbols.contains_key(sym)
            }
            (crate::interp::WfCondition::ArityMismatch { expected, .. }, Some(sym)) => s
                .interpretation
                .symbols
                .get(sym)
                .is_none_or(|cs| cs.len() != expected + 1),
            _ => s.interpretation.check_well_formed(&Signature::default()).as_ref() == Err(w),
        },
        (Condition::NotRemovable, Target::Rule(i), _) => match &cert.problem {
            Problem::Ordered { pairs, .. } => *i >= pairs.len(),
            Problem::Termination(_) => false,
        },
        _ => check_certificate(cert) == Verdict::Rejected(rejection.clone()),
    }
}
