//! Random terms, interpretations and assignments, plus a direct recursive
//! evaluator used as an oracle for the symbolic machinery.

use rand::seq::SliceRandom;
use rand::Rng;
use trscert::interp::Assignment;
use trscert::{Domain, Interpretation, Regime, Rule, Term, Value};

use super::laws::{growing, nonneg, sample};

pub const SIG: &[(&str, usize)] = &[("a", 0), ("b", 0), ("s", 1), ("p", 1), ("f", 2)];
pub const VARS: &[&str] = &["x", "y"];

pub fn random_term<R: Rng>(rng: &mut R, max_size: usize) -> Term {
    fn go<R: Rng>(rng: &mut R, budget: usize) -> Term {
        let fits: Vec<&(&str, usize)> = SIG.iter().filter(|(_, n)| n + 1 <= budget).collect();
        if budget <= 1 || rng.gen_ratio(1, 4) {
            return if rng.gen_bool(0.6) {
                Term::var(*VARS.choose(rng).unwrap())
            } else {
                Term::constant(if rng.gen_bool(0.5) { "a" } else { "b" })
            };
        }
        let (f, n) = **fits.choose(rng).unwrap();
        if n == 0 {
            return Term::constant(f);
        }
        let mut left = budget - 1;
        let mut args = Vec::with_capacity(n);
        for i in 0..n {
            let share = if i + 1 == n { left } else { rng.gen_range(1..=left - (n - 1 - i)) };
            left -= share;
            args.push(go(rng, share));
        }
        Term::fun(f, args)
    }
    let size = rng.gen_range(1..=max_size);
    go(rng, size)
}

fn subterms(t: &Term) -> Vec<&Term> {
    let mut out = vec![t];
    if let Term::Fun(_, args) = t {
        for a in args {
            out.extend(subterms(a));
        }
    }
    out
}

/// A rule `l -> r` with `Var(r) ⊆ Var(l)`, leaning towards rules that have
/// a chance of being oriented.
pub fn random_rule<R: Rng>(rng: &mut R, max_size: usize) -> Rule {
    loop {
        let lhs = random_term(rng, max_size);
        if lhs.is_var() {
            continue;
        }
        let rhs = if rng.gen_bool(0.5) {
            (*subterms(&lhs)[1..].choose(rng).unwrap_or(&&lhs)).clone()
        } else {
            random_term(rng, max_size)
        };
        let rule = Rule::new(lhs, rhs);
        if rule.check_admissible().is_ok() {
            return rule;
        }
    }
}

pub fn random_interpretation<R: Rng>(
    rng: &mut R,
    domain: &Domain,
    regime: Regime,
    monotone: bool,
) -> Interpretation {
    let mut interp = Interpretation::new(*domain, regime, monotone);
    for &(f, n) in SIG {
        let coeffs: Vec<Value> = match regime {
            Regime::Plain => (0..=n)
                .map(|i| {
                    if monotone && i > 0 {
                        growing(domain, rng)
                    } else {
                        nonneg(domain, rng)
                    }
                })
                .collect(),
            Regime::NegConst => (0..=n)
                .map(|i| if i == 0 { sample(domain, rng) } else { nonneg(domain, rng) })
                .collect(),
            Regime::Arctic => {
                let p = rng.gen_range(0..=n);
                (0..=n)
                    .map(|i| if i == p { growing(domain, rng) } else { sample(domain, rng) })
                    .collect()
            }
        };
        interp.symbols.insert(f.to_string(), coeffs);
    }
    interp
}

pub fn random_assignment<R: Rng>(rng: &mut R, domain: &Domain) -> Assignment {
    VARS.iter()
        .map(|x| (x.to_string(), nonneg(domain, rng)))
        .collect()
}

/// `[t]α` computed directly from the coefficients, optionally clipping
/// every application with `max0`.
pub fn oracle_eval(interp: &Interpretation, t: &Term, alpha: &Assignment, clip: bool) -> Value {
    let d = &interp.domain;
    match t {
        Term::Var(x) => alpha[x].clone(),
        Term::Fun(f, args) => {
            let cs = &interp.symbols[f];
            let mut acc = cs[0].clone();
            for (c, a) in cs[1..].iter().zip(args) {
                let v = oracle_eval(interp, a, alpha, clip);
                acc = d.add(&acc, &d.mul(c, &v).unwrap()).unwrap();
            }
            if clip {
                d.max0(&acc).unwrap()
            } else {
                acc
            }
        }
    }
}

pub const HOLE: &str = "hole";

/// A context of the given depth with a single occurrence of [`HOLE`].
pub fn random_context<R: Rng>(rng: &mut R, depth: usize) -> Term {
    let mut c = Term::var(HOLE);
    for _ in 0..depth {
        c = match rng.gen_range(0..4) {
            0 => Term::fun("s", vec![c]),
            1 => Term::fun("p", vec![c]),
            2 => Term::fun("f", vec![c, random_term(rng, 3)]),
            _ => Term::fun("f", vec![random_term(rng, 3), c]),
        };
    }
    c
}
