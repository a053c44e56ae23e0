//! First-order terms, rewrite rules and the one-step rewrite relation.
//!
//! The bounded explorer at the bottom is not part of any proof check. It is a
//! smoke oracle: a certified TRS must not admit long derivations from small
//! seeds.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("symbol `{symbol}` used with arity {found}, but earlier with arity {expected}")]
    ArityConflict {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("left-hand side of `{rule}` is a variable")]
    VariableLhs { rule: String },
    #[error("variable `{var}` occurs on the right of `{rule}` but not on the left")]
    FreshRhsVariable { rule: String, var: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Fun(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn fun(symbol: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Fun(symbol.into(), args)
    }

    pub fn constant(symbol: impl Into<String>) -> Self {
        Term::Fun(symbol.into(), Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Fun(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(x) => {
                out.insert(x);
            }
            Term::Fun(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn apply_subst(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Var(x) => sigma.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::Fun(f, args) => {
                Term::Fun(f.clone(), args.iter().map(|a| a.apply_subst(sigma)).collect())
            }
        }
    }

    /// Extends `sigma` so that `self σ = target`, if possible.
    pub fn match_into(&self, target: &Term, sigma: &mut Substitution) -> bool {
        match (self, target) {
            (Term::Var(x), _) => match sigma.get(x) {
                Some(bound) => bound == target,
                None => {
                    sigma.insert(x.clone(), target.clone());
                    true
                }
            },
            (Term::Fun(f, ps), Term::Fun(g, ts)) => {
                f == g
                    && ps.len() == ts.len()
                    && ps.iter().zip(ts).all(|(p, t)| p.match_into(t, sigma))
            }
            (Term::Fun(..), Term::Var(_)) => false,
        }
    }

    /// Substitutes `hole` (a variable name) by `filler`; used to build
    /// contexts `C[t]`.
    pub fn plug(&self, hole: &str, filler: &Term) -> Term {
        let mut sigma = Substitution::default();
        sigma.insert(hole.to_string(), filler.clone());
        self.apply_subst(&sigma)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::Fun(g, args) if args.is_empty() => f.write_str(g),
            Term::Fun(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<String, Term>);

impl Substitution {
    pub fn get(&self, var: &str) -> Option<&Term> {
        self.0.get(var)
    }

    pub fn insert(&mut self, var: String, term: Term) -> Option<Term> {
        self.0.insert(var, term)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.0.iter()
    }
}

impl FromIterator<(String, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Term,
    pub rhs: Term,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Rule { lhs, rhs }
    }

    /// `lhs ∉ V` and `Var(rhs) ⊆ Var(lhs)`.
    pub fn check_admissible(&self) -> Result<(), TermError> {
        if self.lhs.is_var() {
            return Err(TermError::VariableLhs { rule: self.to_string() });
        }
        let lhs_vars = self.lhs.vars();
        if let Some(x) = self.rhs.vars().into_iter().find(|x| !lhs_vars.contains(x)) {
            return Err(TermError::FreshRhsVariable {
                rule: self.to_string(),
                var: x.to_string(),
            });
        }
        Ok(())
    }

    pub fn apply_subst(&self, sigma: &Substitution) -> Rule {
        Rule::new(self.lhs.apply_subst(sigma), self.rhs.apply_subst(sigma))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// Function symbols with their arities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature(BTreeMap<String, usize>);

impl Signature {
    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.0.get(symbol).copied()
    }

    pub fn declare(&mut self, symbol: &str, arity: usize) -> Result<(), TermError> {
        match self.0.get(symbol) {
            Some(&expected) if expected != arity => Err(TermError::ArityConflict {
                symbol: symbol.to_string(),
                expected,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.0.insert(symbol.to_string(), arity);
                Ok(())
            }
        }
    }

    pub fn add_term(&mut self, t: &Term) -> Result<(), TermError> {
        if let Term::Fun(f, args) = t {
            self.declare(f, args.len())?;
            for a in args {
                self.add_term(a)?;
            }
        }
        Ok(())
    }

    pub fn of_rules<'a>(rules: impl IntoIterator<Item = &'a Rule>) -> Result<Self, TermError> {
        let mut sig = Signature::default();
        for r in rules {
            sig.add_term(&r.lhs)?;
            sig.add_term(&r.rhs)?;
        }
        Ok(sig)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(f, &n)| (f.as_str(), n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trs {
    rules: Vec<Rule>,
    signature: Signature,
}

impl Trs {
    pub fn new(rules: Vec<Rule>) -> Result<Self, TermError> {
        let signature = Signature::of_rules(&rules)?;
        Ok(Trs { rules, signature })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn check_admissible(&self) -> Result<(), TermError> {
        self.rules.iter().try_for_each(Rule::check_admissible)
    }
}

/// All `t` with `s →_R t` in one step.
pub fn successors(trs: &Trs, s: &Term) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    collect_successors(trs.rules(), s, &mut out);
    out
}

fn collect_successors(rules: &[Rule], s: &Term, out: &mut BTreeSet<Term>) {
    for rule in rules {
        let mut sigma = Substitution::default();
        if rule.lhs.match_into(s, &mut sigma) {
            out.insert(rule.rhs.apply_subst(&sigma));
        }
    }
    if let Term::Fun(f, args) = s {
        for (i, arg) in args.iter().enumerate() {
            let mut inner = BTreeSet::new();
            collect_successors(rules, arg, &mut inner);
            for t in inner {
                let mut new_args = args.clone();
                new_args[i] = t;
                out.insert(Term::Fun(f.clone(), new_args));
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExplorationLimits {
    pub max_depth: usize,
    pub max_states: usize,
}

impl Default for ExplorationLimits {
    fn default() -> Self {
        ExplorationLimits {
            max_depth: 64,
            max_states: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Inconclusive {
    #[error("requested depth {requested} exceeds cap {cap}")]
    DepthCap { requested: usize, cap: usize },
    #[error("explored-state budget of {budget} exceeded")]
    Budget { budget: usize },
}

/// `Ok(true)` iff no derivation longer than `depth` starts from any seed.
///
/// Breadth-first over the sets of terms reachable in exactly `k` steps, with
/// successor sets memoized across levels.
pub fn bounded_no_long_derivation(
    trs: &Trs,
    seeds: &[Term],
    depth: usize,
    limits: ExplorationLimits,
) -> Result<bool, Inconclusive> {
    if depth > limits.max_depth {
        return Err(Inconclusive::DepthCap {
            requested: depth,
            cap: limits.max_depth,
        });
    }
    let mut memo: HashMap<Term, BTreeSet<Term>> = HashMap::new();
    let mut level: BTreeSet<Term> = seeds.iter().cloned().collect();
    for _ in 0..=depth {
        let mut next = BTreeSet::new();
        for t in &level {
            if !memo.contains_key(t) {
                if memo.len() >= limits.max_states {
                    return Err(Inconclusive::Budget {
                        budget: limits.max_states,
                    });
                }
                memo.insert(t.clone(), successors(trs, t));
            }
            next.extend(memo[t].iter().cloned());
        }
        if next.is_empty() {
            return Ok(true);
        }
        level = next;
    }
    Ok(false)
}

/// Every term over `signature` and `variables` with at most `max_size`
/// symbol occurrences, in order of increasing size.
pub fn terms_up_to_size(signature: &Signature, variables: &[&str], max_size: usize) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    if max_size == 0 {
        return Vec::new();
    }
    by_size[1].extend(variables.iter().map(|x| Term::var(*x)));
    by_size[1].extend(
        signature
            .iter()
            .filter(|&(_, n)| n == 0)
            .map(|(f, _)| Term::constant(f)),
    );
    for size in 2..=max_size {
        let mut terms = Vec::new();
        for (f, arity) in signature.iter().filter(|&(_, n)| n > 0) {
            for args in arg_tuples(&by_size, arity, size - 1) {
                terms.push(Term::fun(f, args));
            }
        }
        by_size[size] = terms;
    }
    by_size.into_iter().flatten().collect()
}

fn arg_tuples(by_size: &[Vec<Term>], arity: usize, total: usize) -> Vec<Vec<Term>> {
    if arity == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(arity - 1) {
        for t in &by_size[first] {
            for mut rest in arg_tuples(by_size, arity - 1, total - first) {
                rest.insert(0, t.clone());
                out.push(rest);
            }
        }
    }
    out
}
