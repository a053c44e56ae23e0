//! Property runners over random interpretations. Each returns a [`Tally`]
//! of the non-vacuous cases it checked; callers decide how many they need.

use rand::Rng;
use trscert::interp::{poly_ge, poly_gt};
use trscert::terms::Substitution;
use trscert::{Domain, Interpretation, Orientation, Regime, Rule, Term};

use super::terms::{
    oracle_eval, random_assignment, random_context, random_interpretation, random_rule,
    random_term, HOLE, VARS,
};

#[derive(Debug, Default)]
pub struct Tally {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, ctx: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(ctx());
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }

    pub fn ok(&self, required: usize) -> bool {
        self.failures.is_empty() && self.cases >= required
    }

    pub fn describe(&self) -> String {
        match self.failures.first() {
            None => format!("{} cases", self.cases),
            Some(f) => format!("{} cases, {} failures, first: {f}", self.cases, self.failures.len()),
        }
    }
}

/// Interpretation that passes well-formedness for the sample signature.
fn well_formed<R: Rng>(rng: &mut R, d: &Domain, regime: Regime, monotone: bool) -> Interpretation {
    let sig = trscert::Signature::of_rules(std::iter::empty()).unwrap();
    loop {
        let i = random_interpretation(rng, d, regime, monotone);
        if i.check_well_formed(&sig).is_ok() {
            return i;
        }
    }
}

fn attempts(cases: usize) -> usize {
    cases * 400 + 1000
}

fn random_subst<R: Rng>(rng: &mut R) -> Substitution {
    VARS.iter()
        .map(|x| (x.to_string(), random_term(rng, 3)))
        .collect()
}

/// `eval(left(t)) ≤ eval_max(t) ≤ eval(right(t))` for negative-constant
/// interpretations, with `eval_max` itself checked against the oracle.
pub fn sandwich<R: Rng>(rng: &mut R, d: &Domain, cases: usize) -> Tally {
    let mut tally = Tally::default();
    while tally.cases < cases {
        let interp = well_formed(rng, d, Regime::NegConst, false);
        let t = random_term(rng, 6);
        let alpha = random_assignment(rng, d);
        let result = (|| -> Result<bool, String> {
            let err = |e: &dyn std::fmt::Display| e.to_string();
            let left = interp.approx_left(&t).map_err(|e| err(&e))?;
            let right = interp.approx_right(&t).map_err(|e| err(&e))?;
            let exact = interp.eval_max(&t, &alpha).map_err(|e| err(&e))?;
            let l = left.eval(d, &alpha).map_err(|e| err(&e))?;
            let r = right.eval(d, &alpha).map_err(|e| err(&e))?;
            Ok(exact == oracle_eval(&interp, &t, &alpha, true)
                && d.weak_ge(&exact, &l).map_err(|e| err(&e))?
                && d.weak_ge(&r, &exact).map_err(|e| err(&e))?)
        })();
        tally.check(result == Ok(true), || format!("{t} under {alpha:?}: {result:?}"));
    }
    tally
}

fn oriented<R: Rng>(rng: &mut R, interp: &Interpretation) -> Option<(Rule, Orientation)> {
    let rule = random_rule(rng, 5);
    match interp.orient(&rule) {
        Ok(Orientation::Unoriented) | Err(_) => None,
        Ok(o) => Some((rule, o)),
    }
}

/// Symbolic stability for plain and arctic interpretations: orientation is
/// preserved by substitution.
pub fn symbolic_stability<R: Rng>(rng: &mut R, d: &Domain, regime: Regime, cases: usize) -> Tally {
    let mut tally = Tally::default();
    for _ in 0..attempts(cases) {
        if tally.cases >= cases {
            break;
        }
        let interp = well_formed(rng, d, regime, false);
        let Some((rule, o)) = oriented(rng, &interp) else { continue };
        let inst = rule.apply_subst(&random_subst(rng));
        let o2 = interp.orient(&inst);
        let ok = match o {
            Orientation::Strict => o2 == Ok(Orientation::Strict),
            _ => matches!(o2, Ok(Orientation::Strict | Orientation::Weak)),
        };
        tally.check(ok, || format!("{rule} is {o}, instance {inst} is {o2:?}"));
    }
    tally
}

/// Stability in the semantic sense for negative constants: the max-wrapped
/// values of every instance keep the orientation of the rule.
pub fn semantic_stability<R: Rng>(rng: &mut R, d: &Domain, cases: usize) -> Tally {
    let mut tally = Tally::default();
    for _ in 0..attempts(cases) {
        if tally.cases >= cases {
            break;
        }
        let interp = well_formed(rng, d, Regime::NegConst, false);
        let Some((rule, o)) = oriented(rng, &interp) else { continue };
        let inst = rule.apply_subst(&random_subst(rng));
        let alpha = random_assignment(rng, d);
        let l = interp.eval_max(&inst.lhs, &alpha).unwrap();
        let r = interp.eval_max(&inst.rhs, &alpha).unwrap();
        let ok = match o {
            Orientation::Strict => d.strict_gt(&l, &r).unwrap(),
            _ => d.weak_ge(&l, &r).unwrap(),
        };
        tally.check(ok, || format!("{rule} is {o}, instance {inst}: {l} vs {r}"));
    }
    tally
}

/// Strict orientation implies strict decrease of the values at every
/// sampled non-negative assignment.
pub fn semantic_decrease<R: Rng>(rng: &mut R, d: &Domain, regime: Regime, cases: usize) -> Tally {
    let mut tally = Tally::default();
    for _ in 0..attempts(cases) {
        if tally.cases >= cases {
            break;
        }
        let interp = well_formed(rng, d, regime, false);
        let Some((rule, Orientation::Strict)) = oriented(rng, &interp) else { continue };
        let alpha = random_assignment(rng, d);
        let clip = regime == Regime::NegConst;
        let l = oracle_eval(&interp, &rule.lhs, &alpha, clip);
        let r = oracle_eval(&interp, &rule.rhs, &alpha, clip);
        tally.check(d.strict_gt(&l, &r).unwrap(), || format!("{rule}: {l} vs {r}"));
    }
    tally
}

/// Strict orientation survives closing both sides under a context, for
/// monotone plain interpretations.
pub fn monotone_context<R: Rng>(rng: &mut R, d: &Domain, cases: usize) -> Tally {
    let mut tally = Tally::default();
    for _ in 0..attempts(cases) {
        if tally.cases >= cases {
            break;
        }
        let interp = well_formed(rng, d, Regime::Plain, true);
        let Some((rule, Orientation::Strict)) = oriented(rng, &interp) else { continue };
        let depth = rng.gen_range(1..=2);
        let c = random_context(rng, depth);
        let closed = Rule::new(c.plug(HOLE, &rule.lhs), c.plug(HOLE, &rule.rhs));
        let o = interp.orient(&closed);
        tally.check(o == Ok(Orientation::Strict), || format!("{rule} in {c}: {o:?}"));
    }
    tally
}

/// `poly_gt ⇒ poly_ge` on the sides produced by orientation.
pub fn gt_implies_ge<R: Rng>(rng: &mut R, d: &Domain, regime: Regime, cases: usize) -> Tally {
    let mut tally = Tally::default();
    while tally.cases < cases {
        let interp = well_formed(rng, d, regime, false);
        let rule = random_rule(rng, 5);
        let (p, q) = interp.orientation_sides(&rule).unwrap();
        let gt = poly_gt(d, &p, &q).unwrap();
        tally.check(!gt || poly_ge(d, &p, &q).unwrap(), || format!("{rule}"));
    }
    tally
}

/// The linear form of `t` evaluates to the same value as `t` itself.
pub fn symbolic_agrees<R: Rng>(rng: &mut R, d: &Domain, regime: Regime, cases: usize) -> Tally {
    let mut tally = Tally::default();
    while tally.cases < cases {
        let interp = well_formed(rng, d, regime, false);
        let t: Term = random_term(rng, 6);
        let alpha = random_assignment(rng, d);
        let direct = oracle_eval(&interp, &t, &alpha, false);
        let via_form = interp.symbolic_eval(&t).unwrap().eval(d, &alpha).unwrap();
        let evaluated = interp.evaluate(&t, &alpha).unwrap();
        tally.check(direct == via_form && direct == evaluated, || {
            format!("{t}: direct {direct}, linear form {via_form}, evaluate {evaluated}")
        });
    }
    tally
}
