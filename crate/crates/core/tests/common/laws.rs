//! Seeded law suites for scalar and matrix carriers.
//!
//! Premises such as `x > y` are produced constructively from test-side
//! arithmetic on the raw payloads, so every sampled case exercises its law.
//! Each construction is also checked against the carrier's own order, which
//! catches an order that disagrees with the intended one.

use rand::Rng;
use trscert::{Arctic, CarrierKind, CarrierSpec, Domain, Matrix, Rational, Scalar, Value};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

/// The carriers the scalar suite runs over: every kind, rationals at two
/// different `δ`.
pub fn scalar_carriers() -> Vec<CarrierSpec> {
    vec![
        CarrierSpec::nat(),
        CarrierSpec::int(),
        CarrierSpec::rat(q(1, 2)).unwrap(),
        CarrierSpec::rat(q(1, 1)).unwrap(),
        CarrierSpec::arctic_nat(),
        CarrierSpec::arctic_int(),
        CarrierSpec::arctic_rat(q(1, 3)).unwrap(),
    ]
}

/// Payload of a finite scalar as a rational; `None` for `-inf`.
pub fn payload(s: &Scalar) -> Option<Rational> {
    match *s {
        Scalar::Nat(n) => Some(Rational::from_integer(n as i64)),
        Scalar::Int(n) => Some(Rational::from_integer(n)),
        Scalar::Rat(r) => Some(r),
        Scalar::ArcticNat(Arctic::Finite(n)) => Some(Rational::from_integer(n as i64)),
        Scalar::ArcticInt(Arctic::Finite(n)) => Some(Rational::from_integer(n)),
        Scalar::ArcticRat(Arctic::Finite(r)) => Some(r),
        _ => None,
    }
}

/// Builds a finite scalar of `base`'s kind; `r` must be representable.
pub fn scalar_of(base: &CarrierSpec, r: Rational) -> Scalar {
    let int = || {
        assert!(r.is_integer(), "{r} is not an integer");
        r.numer()
    };
    match base.kind() {
        CarrierKind::Nat => Scalar::Nat(u64::try_from(int()).expect("non-negative")),
        CarrierKind::Int => Scalar::Int(int()),
        CarrierKind::Rat => Scalar::Rat(r),
        CarrierKind::ArcticNat => {
            Scalar::ArcticNat(Arctic::Finite(u64::try_from(int()).expect("non-negative")))
        }
        CarrierKind::ArcticInt => Scalar::ArcticInt(Arctic::Finite(int())),
        CarrierKind::ArcticRat => Scalar::ArcticRat(Arctic::Finite(r)),
    }
}

pub fn unit(base: &CarrierSpec) -> Rational {
    base.delta().unwrap_or(Rational::ONE)
}

/// A small non-negative offset in the carrier's number system.
fn offset<R: Rng>(base: &CarrierSpec, rng: &mut R, spread: i64) -> Rational {
    if base.delta().is_some() {
        q(rng.gen_range(0..=2 * spread), rng.gen_range(1..=3))
    } else {
        Rational::from_integer(rng.gen_range(0..=spread))
    }
}

pub fn sample_scalar<R: Rng>(base: &CarrierSpec, rng: &mut R, spread: i64) -> Scalar {
    if base.is_arctic() && rng.gen_ratio(1, 5) {
        return base.neg_inf().unwrap();
    }
    let lo = if matches!(base.kind(), CarrierKind::Nat | CarrierKind::ArcticNat) { 0 } else { -1 };
    let r = if base.delta().is_some() {
        q(rng.gen_range(lo * 3 * spread..=3 * spread), rng.gen_range(1..=3))
    } else {
        Rational::from_integer(rng.gen_range(lo * spread..=spread))
    };
    scalar_of(base, r)
}

fn shift(base: &CarrierSpec, s: &Scalar, by: Rational) -> Scalar {
    scalar_of(base, payload(s).unwrap().checked_add(by).unwrap())
}

pub fn weak_above_scalar<R: Rng>(base: &CarrierSpec, rng: &mut R, y: &Scalar) -> Scalar {
    if y.is_neg_inf() {
        return sample_scalar(base, rng, 4);
    }
    let k = offset(base, rng, 3);
    shift(base, y, k)
}

pub fn strict_above_scalar<R: Rng>(base: &CarrierSpec, rng: &mut R, y: &Scalar) -> Scalar {
    if y.is_neg_inf() {
        return sample_scalar(base, rng, 4);
    }
    let k = offset(base, rng, 3).checked_add(unit(base)).unwrap();
    shift(base, y, k)
}

fn map_matrix(m: &Matrix, mut f: impl FnMut(usize, usize, &Scalar) -> Scalar) -> Matrix {
    let n = m.dim();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| f(i, j, m.get(i, j))).collect())
        .collect();
    Matrix::from_rows(rows).unwrap()
}

pub fn sample<R: Rng>(d: &Domain, rng: &mut R) -> Value {
    match d {
        Domain::Scalar(c) => Value::Scalar(sample_scalar(c, rng, 4)),
        Domain::Matrix(m) => Value::Matrix(map_matrix(&m.zero(), |_, _, _| {
            sample_scalar(m.base(), rng, 2)
        })),
    }
}

pub fn weak_above<R: Rng>(d: &Domain, rng: &mut R, y: &Value) -> Value {
    match (d, y) {
        (Domain::Scalar(c), Value::Scalar(s)) => Value::Scalar(weak_above_scalar(c, rng, s)),
        (Domain::Matrix(m), Value::Matrix(y)) => Value::Matrix(map_matrix(y, |_, _, s| {
            weak_above_scalar(m.base(), rng, s)
        })),
        _ => unreachable!("value does not belong to domain"),
    }
}

pub fn strict_above<R: Rng>(d: &Domain, rng: &mut R, y: &Value) -> Value {
    match (d, y) {
        (Domain::Scalar(c), Value::Scalar(s)) => Value::Scalar(strict_above_scalar(c, rng, s)),
        (Domain::Matrix(m), Value::Matrix(y)) => match m.sd() {
            None => Value::Matrix(map_matrix(y, |_, _, s| strict_above_scalar(m.base(), rng, s))),
            Some(sd) => {
                let (pi, pj) = (rng.gen_range(0..sd), rng.gen_range(0..sd));
                Value::Matrix(map_matrix(y, |i, j, s| {
                    if (i, j) == (pi, pj) {
                        strict_above_scalar(m.base(), rng, s)
                    } else {
                        weak_above_scalar(m.base(), rng, s)
                    }
                }))
            }
        },
        _ => unreachable!("value does not belong to domain"),
    }
}

pub fn nonneg<R: Rng>(d: &Domain, rng: &mut R) -> Value {
    weak_above(d, rng, &d.zero())
}

/// `x ≥ 0` with the growth predicate: `mono` off arctic, `pos` on it.
pub fn growing<R: Rng>(d: &Domain, rng: &mut R) -> Value {
    match d {
        Domain::Scalar(c) => Value::Scalar(weak_above_scalar(c, rng, &c.one())),
        Domain::Matrix(m) if m.is_arctic() => {
            let Value::Matrix(x) = sample(d, rng) else { unreachable!() };
            let one = m.base().one();
            Value::Matrix(map_matrix(&x, |i, j, s| {
                if (i, j) == (0, 0) {
                    weak_above_scalar(m.base(), rng, &one)
                } else {
                    *s
                }
            }))
        }
        Domain::Matrix(m) => {
            let sd = m.sd().unwrap();
            let Value::Matrix(x) = nonneg(d, rng) else { unreachable!() };
            let rows: Vec<usize> = (0..sd).map(|_| rng.gen_range(0..sd)).collect();
            let one = m.base().one();
            Value::Matrix(map_matrix(&x, |i, j, s| {
                if j < sd && rows[j] == i {
                    weak_above_scalar(m.base(), rng, &one)
                } else {
                    *s
                }
            }))
        }
    }
}

/// A value inside the well-founded zone.
pub fn guarded<R: Rng>(d: &Domain, rng: &mut R) -> Value {
    if d.is_arctic() {
        growing(d, rng)
    } else {
        nonneg(d, rng)
    }
}

/// Candidate successor one unit below `x`, where that stays in the zone.
fn decrement<R: Rng>(d: &Domain, rng: &mut R, x: &Value) -> Option<Value> {
    let down = |base: &CarrierSpec, s: &Scalar| -> Option<Scalar> {
        let p = payload(s)?.checked_sub(unit(base)).ok()?;
        (!p.is_negative()).then(|| scalar_of(base, p))
    };
    match (d, x) {
        (Domain::Scalar(c), Value::Scalar(s)) => down(c, s).map(Value::Scalar),
        (Domain::Matrix(m), Value::Matrix(x)) => {
            if m.is_arctic() {
                let corner = down(m.base(), x.get(0, 0))?;
                Some(Value::Matrix(map_matrix(x, |i, j, s| {
                    if (i, j) == (0, 0) {
                        corner
                    } else if s.is_neg_inf() {
                        *s
                    } else {
                        down(m.base(), s).unwrap_or_else(|| m.base().neg_inf().unwrap())
                    }
                })))
            } else {
                let sd = m.sd().unwrap();
                let (pi, pj) = (rng.gen_range(0..sd), rng.gen_range(0..sd));
                let e = down(m.base(), x.get(pi, pj))?;
                Some(Value::Matrix(map_matrix(x, |i, j, s| {
                    if (i, j) == (pi, pj) {
                        e
                    } else {
                        *s
                    }
                })))
            }
        }
        _ => None,
    }
}

fn size_key(v: &Value) -> Rational {
    let entries: Vec<Scalar> = match v {
        Value::Scalar(s) => vec![*s],
        Value::Matrix(m) => m.entries().to_vec(),
    };
    entries
        .iter()
        .filter_map(payload)
        .fold(Rational::ZERO, |a, b| a.checked_add(b).unwrap())
}

#[derive(Debug, Default)]
pub struct LawReport {
    pub laws: Vec<(&'static str, usize, Vec<String>)>,
}

impl LawReport {
    fn record(&mut self, name: &'static str, ok: Result<bool, String>, ctx: impl FnOnce() -> String) {
        let idx = match self.laws.iter().position(|(n, _, _)| *n == name) {
            Some(i) => i,
            None => {
                self.laws.push((name, 0, Vec::new()));
                self.laws.len() - 1
            }
        };
        let entry = &mut self.laws[idx];
        entry.1 += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => entry.2.push(ctx()),
            Err(e) => entry.2.push(format!("{}: error {e}", ctx())),
        }
    }

    pub fn failures(&self) -> usize {
        self.laws.iter().map(|(_, _, f)| f.len()).sum()
    }

    pub fn min_cases(&self) -> usize {
        self.laws.iter().map(|(_, c, _)| *c).min().unwrap_or(0)
    }

    pub fn summary(&self) -> String {
        self.laws
            .iter()
            .filter(|(_, _, f)| !f.is_empty())
            .map(|(n, c, f)| format!("{n}: {}/{c} failed, first: {}", f.len(), f[0]))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

macro_rules! check {
    ($report:expr, $name:literal, $body:expr, $($ctx:tt)*) => {
        $report.record($name, (|| -> Result<bool, trscert::AlgebraError> { Ok($body) })().map_err(|e| e.to_string()), || format!($($ctx)*))
    };
}

/// Runs every law applicable to `d`, `cases` times each.
pub fn run_laws<R: Rng>(d: &Domain, rng: &mut R, cases: usize) -> LawReport {
    let mut r = LawReport::default();
    let (zero, one) = (d.zero(), d.one());
    let arctic = d.is_arctic();
    for _ in 0..cases {
        let (x, y, z) = (sample(d, rng), sample(d, rng), sample(d, rng));

        check!(r, "add-associative", d.add(&d.add(&x, &y)?, &z)? == d.add(&x, &d.add(&y, &z)?)?, "{x} {y} {z}");
        check!(r, "add-commutative", d.add(&x, &y)? == d.add(&y, &x)?, "{x} {y}");
        check!(r, "mul-associative", d.mul(&d.mul(&x, &y)?, &z)? == d.mul(&x, &d.mul(&y, &z)?)?, "{x} {y} {z}");
        check!(r, "zero-neutral", d.add(&zero, &x)? == x && d.add(&x, &zero)? == x, "{x}");
        check!(r, "one-neutral", d.mul(&one, &x)? == x && d.mul(&x, &one)? == x, "{x}");
        check!(r, "zero-annihilates", d.mul(&zero, &x)? == zero && d.mul(&x, &zero)? == zero, "{x}");
        check!(r, "distributes-left", d.mul(&x, &d.add(&y, &z)?)? == d.add(&d.mul(&x, &y)?, &d.mul(&x, &z)?)?, "{x} {y} {z}");
        check!(r, "distributes-right", d.mul(&d.add(&x, &y)?, &z)? == d.add(&d.mul(&x, &z)?, &d.mul(&y, &z)?)?, "{x} {y} {z}");
        check!(r, "zero-ne-one", zero != one, "");

        check!(r, "ge-reflexive", d.weak_ge(&x, &x)?, "{x}");
        {
            let b = weak_above(d, rng, &y);
            let c = weak_above(d, rng, &b);
            check!(r, "ge-transitive", d.weak_ge(&b, &y)? && d.weak_ge(&c, &b)? && d.weak_ge(&c, &y)?, "{c} {b} {y}");
        }
        {
            let b = weak_above(d, rng, &z);
            let a = strict_above(d, rng, &b);
            check!(r, "gt-then-ge-is-gt", d.weak_ge(&b, &z)? && d.strict_gt(&a, &b)? && d.strict_gt(&a, &z)?, "{a} {b} {z}");
            let b = strict_above(d, rng, &z);
            let a = weak_above(d, rng, &b);
            check!(r, "ge-then-gt-is-gt", d.strict_gt(&b, &z)? && d.weak_ge(&a, &b)? && d.strict_gt(&a, &z)?, "{a} {b} {z}");
        }
        {
            let a = strict_above(d, rng, &y);
            check!(r, "gt-implies-ge", d.weak_ge(&a, &y)? && (!d.strict_gt(&x, &y)? || d.weak_ge(&x, &y)?), "{a} {x} {y}");
        }
        check!(r, "one-ge-zero-and-grows", d.weak_ge(&one, &zero)? && d.growth_pred(&one)?, "");
        {
            let a = weak_above(d, rng, &y);
            check!(r, "add-left-monotone-ge", d.weak_ge(&d.add(&a, &z)?, &d.add(&y, &z)?)?, "{a} {y} {z}");
        }
        {
            let g = guarded(d, rng);
            let a = strict_above(d, rng, &g);
            check!(r, "rank-decreases", {
                let (ra, rg) = (d.rank(&a)?, d.rank(&g)?);
                d.in_well_founded_zone(&g)? && matches!((ra, rg), (Some(ra), Some(rg)) if ra > rg)
            }, "{a} {g}");
        }
        {
            let base = guarded(d, rng);
            let start = weak_above(d, rng, &base);
            let bound = d.rank(&start).ok().flatten().map(|n| n + 1);
            let mut cur = start.clone();
            let mut steps = 0u64;
            let limit = bound.unwrap_or(0) + 5;
            while steps <= limit {
                let mut candidates: Vec<Value> = (0..12).map(|_| guarded(d, rng)).collect();
                candidates.extend(decrement(d, rng, &cur));
                let next = candidates
                    .into_iter()
                    .filter(|c| d.strict_gt(&cur, c).unwrap_or(false))
                    .max_by_key(size_key);
                match next {
                    Some(n) => {
                        cur = n;
                        steps += 1;
                    }
                    None => break,
                }
            }
            check!(r, "descending-chain-bounded", matches!(bound, Some(b) if steps <= b), "start {start}, {steps} steps, bound {bound:?}");
        }

        if arctic {
            check!(r, "everything-gt-zero", d.strict_gt(&x, &zero)?, "{x}");
            check!(r, "everything-ge-zero", d.weak_ge(&x, &zero)?, "{x}");
            check!(r, "below-zero-is-zero", !d.strict_gt(&zero, &x)? || x == zero, "{x}");
            {
                let (a, b) = (strict_above(d, rng, &y), strict_above(d, rng, &z));
                check!(r, "add-monotone-gt", d.strict_gt(&d.add(&a, &b)?, &d.add(&y, &z)?)?, "{a} {b} {y} {z}");
            }
            {
                let a = weak_above(d, rng, &y);
                check!(r, "mul-left-monotone-ge", d.weak_ge(&d.mul(&a, &z)?, &d.mul(&y, &z)?)?, "{a} {y} {z}");
                check!(r, "mul-right-monotone-ge", d.weak_ge(&d.mul(&z, &a)?, &d.mul(&z, &y)?)?, "{a} {y} {z}");
                let a = strict_above(d, rng, &y);
                check!(r, "mul-left-monotone-gt", d.strict_gt(&d.mul(&a, &z)?, &d.mul(&y, &z)?)?, "{a} {y} {z}");
            }
            {
                let (p, p2) = (growing(d, rng), growing(d, rng));
                check!(r, "staying-positive", d.growth_pred(&p)? && d.growth_pred(&p2)? && d.growth_pred(&d.add(&p, &z)?)? && d.growth_pred(&d.mul(&p, &p2)?)?, "{p} {p2} {z}");
            }
        } else {
            {
                let a = strict_above(d, rng, &y);
                check!(r, "add-left-monotone-gt", d.strict_gt(&d.add(&a, &z)?, &d.add(&y, &z)?)?, "{a} {y} {z}");
            }
            {
                let a = weak_above(d, rng, &y);
                let n = nonneg(d, rng);
                check!(r, "mul-left-monotone-ge", d.weak_ge(&d.mul(&a, &n)?, &d.mul(&y, &n)?)?, "{a} {y} {n}");
                check!(r, "mul-right-monotone-ge", d.weak_ge(&d.mul(&n, &a)?, &d.mul(&n, &y)?)?, "{a} {y} {n}");
            }
            {
                let m = growing(d, rng);
                let a = strict_above(d, rng, &z);
                check!(r, "mul-right-monotone-gt", d.growth_pred(&m)? && d.weak_ge(&m, &zero)? && d.strict_gt(&d.mul(&m, &a)?, &d.mul(&m, &z)?)?, "{m} {a} {z}");
            }
            check!(r, "max0-ge-zero", d.weak_ge(&d.max0(&x)?, &zero)?, "{x}");
            check!(r, "max0-ge-arg", d.weak_ge(&d.max0(&x)?, &x)?, "{x}");
            {
                let a = nonneg(d, rng);
                let b = weak_above(d, rng, &a);
                check!(r, "max0-monotone-fixpoint", d.max0(&a)? == a && d.weak_ge(&d.max0(&b)?, &d.max0(&a)?)?, "{b} {a}");
            }
        }
    }
    r
}
