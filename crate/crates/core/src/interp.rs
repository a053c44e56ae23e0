//! Linear interpretations `[f](x_1, …, x_n) = f_0 ⊕ f_1 ⊙ x_1 ⊕ … ⊕ f_n ⊙ x_n`
//! and the term orders they induce.
//!
//! Three regimes are supported:
//!
//! * [`Regime::Plain`]: all coefficients `≥ 0`; terms are compared through
//!   their symbolic linear forms. With `monotone` set, argument coefficients
//!   must also satisfy `mono`, which makes the strict order closed under
//!   contexts.
//! * [`Regime::NegConst`]: constants may be negative and every application is
//!   wrapped in `max0`. Terms are compared through the max-free
//!   approximations `⟦s⟧_left > ⟦t⟧_right`.
//! * [`Regime::Arctic`]: max-plus carriers, at least one `pos` coefficient per
//!   symbol, comparison coefficient by coefficient.
//!
//! For matrix carriers, variables range over matrices and `f_0` is a matrix
//! as well; coefficients multiply arguments from the left.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{AlgebraError, Scalar};
use crate::matrices::{Domain, Value};
use crate::terms::{Rule, Signature, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Plain,
    NegConst,
    Arctic,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Plain => "plain",
            Regime::NegConst => "negconst",
            Regime::Arctic => "arctic",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Regime::Plain),
            "negconst" => Ok(Regime::NegConst),
            "arctic" => Ok(Regime::Arctic),
            _ => Err(format!("unknown regime `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("no interpretation given for symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` has arity {expected} but {found} coefficients were given")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("operation requires the {expected} regime, interpretation is {found}")]
    RegimeMismatch { expected: &'static str, found: Regime },
    #[error("variable `{0}` is not covered by the assignment")]
    UncoveredVariable(String),
    #[error("assigned value for `{0}` is not in the well-founded zone")]
    NegativeAssignment(String),
    #[error("interpretation is not well formed: {0}")]
    IllFormed(WellFormedViolation),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WfCondition {
    /// Regime and carrier do not fit together (e.g. plain over an arctic
    /// carrier).
    UnsupportedCombination,
    /// A monotonicity claim the regime cannot back.
    MonotoneClaimRejected,
    MissingSymbol,
    ArityMismatch { expected: usize, found: usize },
    WrongCarrier,
    /// `f_i ≥ 0` fails.
    Negative,
    /// `mono(f_i)` fails under a monotonicity claim.
    NotMonotone,
    /// No `f_i` satisfies `pos`.
    NoPositiveCoefficient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellFormedViolation {
    pub symbol: Option<String>,
    pub index: Option<usize>,
    pub condition: WfCondition,
}

impl fmt::Display for WellFormedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match &self.condition {
            WfCondition::UnsupportedCombination => "regime/carrier combination unsupported".into(),
            WfCondition::MonotoneClaimRejected => {
                "monotonicity claim not supported by this regime".into()
            }
            WfCondition::MissingSymbol => "symbol has no interpretation".into(),
            WfCondition::ArityMismatch { expected, found } => {
                format!("expected {} coefficients, found {found}", expected + 1)
            }
            WfCondition::WrongCarrier => "coefficient outside the carrier".into(),
            WfCondition::Negative => "coefficient is not >= 0".into(),
            WfCondition::NotMonotone => "argument coefficient is not mono".into(),
            WfCondition::NoPositiveCoefficient => "no coefficient is pos".into(),
        };
        match (&self.symbol, self.index) {
            (Some(s), Some(i)) => write!(f, "{s}[{i}]: {what}"),
            (Some(s), None) => write!(f, "{s}: {what}"),
            _ => f.write_str(&what),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub domain: Domain,
    pub regime: Regime,
    pub monotone: bool,
    /// Per symbol: `[f_0, f_1, …, f_n]`.
    pub symbols: BTreeMap<String, Vec<Value>>,
}

pub type Assignment = BTreeMap<String, Value>;

impl Interpretation {
    pub fn new(domain: Domain, regime: Regime, monotone: bool) -> Self {
        Interpretation {
            domain,
            regime,
            monotone,
            symbols: BTreeMap::new(),
        }
    }

    pub fn with(mut self, symbol: &str, coeffs: Vec<Value>) -> Self {
        self.symbols.insert(symbol.to_string(), coeffs);
        self
    }

    /// Whether the regime is available on the carrier at all.
    pub fn combination_supported(&self) -> bool {
        match self.regime {
            Regime::Plain | Regime::NegConst => !self.domain.is_arctic(),
            Regime::Arctic => self.domain.is_arctic(),
        }
    }

    fn violation(symbol: &str, index: Option<usize>, condition: WfCondition) -> WellFormedViolation {
        WellFormedViolation {
            symbol: Some(symbol.to_string()),
            index,
            condition,
        }
    }

    /// Regime conditions on one symbol's coefficients.
    fn check_symbol(&self, symbol: &str, coeffs: &[Value]) -> Result<(), WellFormedViolation> {
        if let Some(i) = coeffs.iter().position(|c| !self.domain.contains(c)) {
            return Err(Self::violation(symbol, Some(i), WfCondition::WrongCarrier));
        }
        let d = &self.domain;
        let zero = d.zero();
        let ge0 = |c: &Value| d.weak_ge(c, &zero).unwrap_or(false);
        match self.regime {
            Regime::Plain => {
                if let Some(i) = coeffs.iter().position(|c| !ge0(c)) {
                    return Err(Self::violation(symbol, Some(i), WfCondition::Negative));
                }
                if self.monotone {
                    let bad = coeffs
                        .iter()
                        .enumerate()
                        .skip(1)
                        .find(|(_, c)| !d.growth_pred(c).unwrap_or(false));
                    if let Some((i, _)) = bad {
                        return Err(Self::violation(symbol, Some(i), WfCondition::NotMonotone));
                    }
                }
            }
            Regime::NegConst => {
                let bad = coeffs.iter().enumerate().skip(1).find(|(_, c)| !ge0(c));
                if let Some((i, _)) = bad {
                    return Err(Self::violation(symbol, Some(i), WfCondition::Negative));
                }
            }
            Regime::Arctic => {
                if !coeffs.iter().any(|c| d.growth_pred(c).unwrap_or(false)) {
                    return Err(Self::violation(symbol, None, WfCondition::NoPositiveCoefficient));
                }
            }
        }
        Ok(())
    }

    /// Checks the regime invariant for every symbol of `sig` (which must be
    /// interpreted with the right arity) and for every interpreted symbol.
    pub fn check_well_formed(&self, sig: &Signature) -> Result<(), WellFormedViolation> {
        let global = |condition| WellFormedViolation {
            symbol: None,
            index: None,
            condition,
        };
        if !self.combination_supported() {
            return Err(global(WfCondition::UnsupportedCombination));
        }
        if self.monotone && self.regime != Regime::Plain {
            return Err(global(WfCondition::MonotoneClaimRejected));
        }
        for (symbol, arity) in sig.iter() {
            match self.symbols.get(symbol) {
                None => return Err(Self::violation(symbol, None, WfCondition::MissingSymbol)),
                Some(cs) if cs.len() != arity + 1 => {
                    return Err(Self::violation(
                        symbol,
                        None,
                        WfCondition::ArityMismatch {
                            expected: arity,
                            found: cs.len(),
                        },
                    ))
                }
                Some(_) => {}
            }
        }
        for (symbol, coeffs) in &self.symbols {
            if coeffs.is_empty() {
                return Err(Self::violation(
                    symbol,
                    None,
                    WfCondition::ArityMismatch { expected: 0, found: 0 },
                ));
            }
            self.check_symbol(symbol, coeffs)?;
        }
        Ok(())
    }

    fn coefficients(&self, symbol: &str, arity: usize) -> Result<&[Value], InterpError> {
        let cs = self
            .symbols
            .get(symbol)
            .ok_or_else(|| InterpError::UnknownSymbol(symbol.to_string()))?;
        if cs.len() != arity + 1 {
            return Err(InterpError::ArityMismatch {
                symbol: symbol.to_string(),
                expected: arity,
                found: cs.len(),
            });
        }
        Ok(cs)
    }

    /// Coefficients of an applied symbol, with the regime's per-symbol
    /// conditions enforced.
    fn checked_coefficients(&self, symbol: &str, arity: usize) -> Result<&[Value], InterpError> {
        let cs = self.coefficients(symbol, arity)?;
        self.check_symbol(symbol, cs).map_err(InterpError::IllFormed)?;
        Ok(cs)
    }

    /// `f_0 ⊕ f_1 ⊙ p_1 ⊕ … ⊕ f_n ⊙ p_n` on linear forms.
    fn compose(&self, coeffs: &[Value], args: &[LinearPoly]) -> Result<LinearPoly, InterpError> {
        let d = &self.domain;
        let mut acc = LinearPoly::constant(coeffs[0].clone());
        for (c, p) in coeffs[1..].iter().zip(args) {
            acc = acc.add(d, &p.scale(d, c)?)?;
        }
        Ok(acc)
    }

    fn require(&self, allowed: &[Regime], expected: &'static str) -> Result<(), InterpError> {
        if allowed.contains(&self.regime) {
            Ok(())
        } else {
            Err(InterpError::RegimeMismatch {
                expected,
                found: self.regime,
            })
        }
    }

    /// The linear form of `t` (plain and arctic regimes).
    pub fn symbolic_eval(&self, t: &Term) -> Result<LinearPoly, InterpError> {
        self.require(&[Regime::Plain, Regime::Arctic], "plain or arctic")?;
        self.symbolic(t)
    }

    fn symbolic(&self, t: &Term) -> Result<LinearPoly, InterpError> {
        match t {
            Term::Var(x) => Ok(LinearPoly::var(&self.domain, x)),
            Term::Fun(f, args) => {
                let cs = self.checked_coefficients(f, args.len())?;
                let ps = args.iter().map(|a| self.symbolic(a)).collect::<Result<Vec<_>, _>>()?;
                self.compose(cs, &ps)
            }
        }
    }

    /// Lower approximation: keeps the polynomial unless it is constant, in
    /// which case the constant is clipped by `max0`.
    pub fn approx_left(&self, t: &Term) -> Result<LinearPoly, InterpError> {
        self.require(&[Regime::NegConst], "negconst")?;
        self.left(t)
    }

    fn left(&self, t: &Term) -> Result<LinearPoly, InterpError> {
        match t {
            Term::Var(x) => Ok(LinearPoly::var(&self.domain, x)),
            Term::Fun(f, args) => {
                let cs = self.checked_coefficients(f, args.len())?;
                let ps = args.iter().map(|a| self.left(a)).collect::<Result<Vec<_>, _>>()?;
                let p = self.compose(cs, &ps)?;
                if p.is_constant() {
                    Ok(LinearPoly::constant(self.domain.max0(&p.constant)?))
                } else {
                    Ok(p)
                }
            }
        }
    }

    /// Upper approximation: `ncp(p) ⊕ max0(cp(p))`.
    pub fn approx_right(&self, t: &Term) -> Result<LinearPoly, InterpError> {
        self.require(&[Regime::NegConst], "negconst")?;
        self.right(t)
    }

    fn right(&self, t: &Term) -> Result<LinearPoly, InterpError> {
        match t {
            Term::Var(x) => Ok(LinearPoly::var(&self.domain, x)),
            Term::Fun(f, args) => {
                let cs = self.checked_coefficients(f, args.len())?;
                let ps = args.iter().map(|a| self.right(a)).collect::<Result<Vec<_>, _>>()?;
                let mut p = self.compose(cs, &ps)?;
                p.constant = self.domain.max0(&p.constant)?;
                Ok(p)
            }
        }
    }

    fn lookup<'a>(&self, x: &str, alpha: &'a Assignment) -> Result<&'a Value, InterpError> {
        alpha
            .get(x)
            .ok_or_else(|| InterpError::UncoveredVariable(x.to_string()))
    }

    /// Max-wrapped semantics of the negative-constant regime: every
    /// application is clipped with `max0`. Assigned values must be `≥ 0`.
    pub fn eval_max(&self, t: &Term, alpha: &Assignment) -> Result<Value, InterpError> {
        self.require(&[Regime::NegConst], "negconst")?;
        for x in t.vars() {
            let v = self.lookup(x, alpha)?;
            if !self.domain.weak_ge(v, &self.domain.zero())? {
                return Err(InterpError::NegativeAssignment(x.to_string()));
            }
        }
        self.eval_rec(t, alpha, true)
    }

    /// Direct recursive evaluation of `t` under `alpha`: `eval_max` in the
    /// negative-constant regime, the plain homomorphic extension otherwise.
    pub fn evaluate(&self, t: &Term, alpha: &Assignment) -> Result<Value, InterpError> {
        match self.regime {
            Regime::NegConst => self.eval_max(t, alpha),
            _ => self.eval_rec(t, alpha, false),
        }
    }

    fn eval_rec(&self, t: &Term, alpha: &Assignment, clip: bool) -> Result<Value, InterpError> {
        let d = &self.domain;
        match t {
            Term::Var(x) => Ok(self.lookup(x, alpha)?.clone()),
            Term::Fun(f, args) => {
                let cs = self.coefficients(f, args.len())?;
                let mut acc = cs[0].clone();
                for (c, a) in cs[1..].iter().zip(args) {
                    let v = self.eval_rec(a, alpha, clip)?;
                    acc = d.add(&acc, &d.mul(c, &v)?)?;
                }
                if clip {
                    acc = d.max0(&acc)?;
                }
                Ok(acc)
            }
        }
    }

    /// Both sides of `rule` as compared by the regime: linear forms for plain
    /// and arctic, left/right approximations for negative constants.
    pub fn orientation_sides(&self, rule: &Rule) -> Result<(LinearPoly, LinearPoly), InterpError> {
        match self.regime {
            Regime::NegConst => Ok((self.left(&rule.lhs)?, self.right(&rule.rhs)?)),
            _ => Ok((self.symbolic(&rule.lhs)?, self.symbolic(&rule.rhs)?)),
        }
    }

    pub fn orient(&self, rule: &Rule) -> Result<Orientation, InterpError> {
        Ok(self.orient_report(rule)?.orientation)
    }

    pub fn orient_report(&self, rule: &Rule) -> Result<OrientReport, InterpError> {
        let (lhs, rhs) = self.orientation_sides(rule)?;
        let orientation = if poly_gt(&self.domain, &lhs, &rhs)? {
            Orientation::Strict
        } else if poly_ge(&self.domain, &lhs, &rhs)? {
            Orientation::Weak
        } else {
            Orientation::Unoriented
        };
        Ok(OrientReport { lhs, rhs, orientation })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Strict,
    Weak,
    Unoriented,
}

impl Orientation {
    pub fn is_weak_or_better(self) -> bool {
        !matches!(self, Orientation::Unoriented)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Orientation::Strict => ">",
            Orientation::Weak => ">=",
            Orientation::Unoriented => "?",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Strict => "Strict",
            Orientation::Weak => "Weak",
            Orientation::Unoriented => "None",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientReport {
    pub lhs: LinearPoly,
    pub rhs: LinearPoly,
    pub orientation: Orientation,
}

/// `constant ⊕ ⊕_x coeff(x) ⊙ x`, with `⊥0` coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPoly {
    constant: Value,
    coeffs: BTreeMap<String, Value>,
}

impl LinearPoly {
    pub fn constant(value: Value) -> Self {
        LinearPoly {
            constant: value,
            coeffs: BTreeMap::new(),
        }
    }

    /// The variable `x`: constant `⊥0`, coefficient `⊥1`.
    pub fn var(domain: &Domain, x: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(x.to_string(), domain.one());
        LinearPoly {
            constant: domain.zero(),
            coeffs,
        }
    }

    /// Builds a polynomial, dropping `⊥0` coefficients.
    pub fn from_parts(domain: &Domain, constant: Value, coeffs: BTreeMap<String, Value>) -> Self {
        let zero = domain.zero();
        LinearPoly {
            constant,
            coeffs: coeffs.into_iter().filter(|(_, c)| *c != zero).collect(),
        }
    }

    /// `cp(·)`.
    pub fn constant_part(&self) -> &Value {
        &self.constant
    }

    /// `ncp(·)` as a coefficient map.
    pub fn coefficients(&self) -> &BTreeMap<String, Value> {
        &self.coeffs
    }

    pub fn coeff(&self, x: &str) -> Option<&Value> {
        self.coeffs.get(x)
    }

    /// `ncp(p) = ⊥0`.
    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `c ⊙ p`.
    pub fn scale(&self, domain: &Domain, c: &Value) -> Result<LinearPoly, AlgebraError> {
        let constant = domain.mul(c, &self.constant)?;
        let mut coeffs = BTreeMap::new();
        for (x, a) in &self.coeffs {
            coeffs.insert(x.clone(), domain.mul(c, a)?);
        }
        Ok(LinearPoly::from_parts(domain, constant, coeffs))
    }

    /// `p ⊕ q`.
    pub fn add(&self, domain: &Domain, other: &LinearPoly) -> Result<LinearPoly, AlgebraError> {
        let constant = domain.add(&self.constant, &other.constant)?;
        let mut coeffs = self.coeffs.clone();
        for (x, b) in &other.coeffs {
            let c = match coeffs.get(x) {
                Some(a) => domain.add(a, b)?,
                None => b.clone(),
            };
            coeffs.insert(x.clone(), c);
        }
        Ok(LinearPoly::from_parts(domain, constant, coeffs))
    }

    pub fn eval(&self, domain: &Domain, alpha: &Assignment) -> Result<Value, InterpError> {
        let mut acc = self.constant.clone();
        for (x, a) in &self.coeffs {
            let v = alpha
                .get(x)
                .ok_or_else(|| InterpError::UncoveredVariable(x.clone()))?;
            acc = domain.add(&acc, &domain.mul(a, v)?)?;
        }
        Ok(acc)
    }

    /// Human-readable form: `1/2*x + 1/2` on plain carriers,
    /// `max(2+x, 0)` on arctic ones.
    pub fn render(&self, domain: &Domain) -> String {
        let one = domain.one();
        if domain.is_arctic() {
            let mut parts: Vec<String> = self
                .coeffs
                .iter()
                .map(|(x, c)| if *c == one { x.clone() } else { format!("{c}+{x}") })
                .collect();
            parts.push(self.constant.to_string());
            return if parts.len() == 1 {
                parts.pop().unwrap()
            } else {
                format!("max({})", parts.join(", "))
            };
        }
        let mut out = String::new();
        for (x, c) in &self.coeffs {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            if *c == one {
                out.push_str(x);
            } else {
                out.push_str(&format!("{c}*{x}"));
            }
        }
        let zero = domain.zero();
        if out.is_empty() {
            out = self.constant.to_string();
        } else if self.constant != zero {
            let text = self.constant.to_string();
            match (&self.constant, text.strip_prefix('-')) {
                (Value::Scalar(_), Some(abs)) => out.push_str(&format!(" - {abs}")),
                _ => out.push_str(&format!(" + {text}")),
            }
        }
        out
    }
}

fn variables<'a>(p: &'a LinearPoly, q: &'a LinearPoly) -> BTreeSet<&'a str> {
    p.coeffs.keys().chain(q.coeffs.keys()).map(String::as_str).collect()
}

fn compare_coefficients(
    domain: &Domain,
    p: &LinearPoly,
    q: &LinearPoly,
    rel: impl Fn(&Value, &Value) -> Result<bool, AlgebraError>,
) -> Result<bool, AlgebraError> {
    let zero = domain.zero();
    for x in variables(p, q) {
        let a = p.coeff(x).unwrap_or(&zero);
        let b = q.coeff(x).unwrap_or(&zero);
        if !rel(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weak comparison: constant and every coefficient compared with `≥`.
pub fn poly_ge(domain: &Domain, p: &LinearPoly, q: &LinearPoly) -> Result<bool, AlgebraError> {
    Ok(domain.weak_ge(&p.constant, &q.constant)?
        && compare_coefficients(domain, p, q, |a, b| domain.weak_ge(a, b))?)
}

/// Strict comparison. Plain carriers: constant with `>`, coefficients with
/// `≥`. Arctic carriers: constant and every coefficient with `>` (absent
/// coefficients are `-inf`, and `-inf > -inf`).
pub fn poly_gt(domain: &Domain, p: &LinearPoly, q: &LinearPoly) -> Result<bool, AlgebraError> {
    if !domain.strict_gt(&p.constant, &q.constant)? {
        return Ok(false);
    }
    if domain.is_arctic() {
        compare_coefficients(domain, p, q, |a, b| domain.strict_gt(a, b))
    } else {
        compare_coefficients(domain, p, q, |a, b| domain.weak_ge(a, b))
    }
}

/// Shorthand used by tests and the searcher: a scalar coefficient list.
pub fn scalars(values: &[Scalar]) -> Vec<Value> {
    values.iter().copied().map(Value::Scalar).collect()
}
