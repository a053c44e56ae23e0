//! Scalar carriers: the naturals, the integers, the rationals with a strict
//! margin `δ`, and their arctic (max-plus) counterparts `S ∪ {-inf}`.
//!
//! All carriers are driven at runtime by a [`CarrierSpec`]; the operations of
//! the ordered semiring (`⊕`, `⊙`, `≥`, `>`, `mono`/`pos`, `max0`) are methods
//! on `CarrierSpec` that check the kind of every operand.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rational::{Overflow, ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("value `{value}` does not belong to carrier {carrier}")]
    CarrierMismatch { carrier: String, value: String },
    #[error("{operation} is not supported on carrier {carrier}")]
    Unsupported {
        operation: &'static str,
        carrier: String,
    },
    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("`{literal}` is not a valid {carrier} literal")]
    Invalid { literal: String, carrier: String },
    #[error("`{literal}`: {source}")]
    Rational {
        literal: String,
        source: ParseRationalError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CarrierKind {
    Nat,
    Int,
    Rat,
    ArcticNat,
    ArcticInt,
    ArcticRat,
}

impl CarrierKind {
    pub const ALL: [CarrierKind; 6] = [
        CarrierKind::Nat,
        CarrierKind::Int,
        CarrierKind::Rat,
        CarrierKind::ArcticNat,
        CarrierKind::ArcticInt,
        CarrierKind::ArcticRat,
    ];

    pub fn is_arctic(self) -> bool {
        matches!(
            self,
            CarrierKind::ArcticNat | CarrierKind::ArcticInt | CarrierKind::ArcticRat
        )
    }

    pub fn needs_delta(self) -> bool {
        matches!(self, CarrierKind::Rat | CarrierKind::ArcticRat)
    }

    /// Name used in certificate files.
    pub fn name(self) -> &'static str {
        match self {
            CarrierKind::Nat => "nat",
            CarrierKind::Int => "int",
            CarrierKind::Rat => "rat",
            CarrierKind::ArcticNat => "arctic-nat",
            CarrierKind::ArcticInt => "arctic-int",
            CarrierKind::ArcticRat => "arctic-rat",
        }
    }
}

impl fmt::Display for CarrierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CarrierKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CarrierKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown carrier `{s}`"))
    }
}

/// An arctic value: either `-inf` (the additive zero) or a finite payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arctic<T> {
    NegInf,
    Finite(T),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scalar {
    Nat(u64),
    Int(i64),
    Rat(Rational),
    ArcticNat(Arctic<u64>),
    ArcticInt(Arctic<i64>),
    ArcticRat(Arctic<Rational>),
}

impl Scalar {
    pub fn kind(&self) -> CarrierKind {
        match self {
            Scalar::Nat(_) => CarrierKind::Nat,
            Scalar::Int(_) => CarrierKind::Int,
            Scalar::Rat(_) => CarrierKind::Rat,
            Scalar::ArcticNat(_) => CarrierKind::ArcticNat,
            Scalar::ArcticInt(_) => CarrierKind::ArcticInt,
            Scalar::ArcticRat(_) => CarrierKind::ArcticRat,
        }
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(
            self,
            Scalar::ArcticNat(Arctic::NegInf)
                | Scalar::ArcticInt(Arctic::NegInf)
                | Scalar::ArcticRat(Arctic::NegInf)
        )
    }
}

fn fmt_arctic<T: fmt::Display>(a: &Arctic<T>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match a {
        Arctic::NegInf => f.write_str("-inf"),
        Arctic::Finite(v) => v.fmt(f),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Nat(n) => n.fmt(f),
            Scalar::Int(n) => n.fmt(f),
            Scalar::Rat(q) => q.fmt(f),
            Scalar::ArcticNat(a) => fmt_arctic(a, f),
            Scalar::ArcticInt(a) => fmt_arctic(a, f),
            Scalar::ArcticRat(a) => fmt_arctic(a, f),
        }
    }
}

/// Numeric payloads shared by the plain carriers and the finite part of the
/// arctic ones.
trait Number: Copy + Ord {
    const ZERO: Self;
    fn add(self, rhs: Self) -> Result<Self, Overflow>;
    fn mul(self, rhs: Self) -> Result<Self, Overflow>;
    /// The underlying strict order: `>` for integers, `>_δ` for rationals.
    fn above(self, rhs: Self, delta: Option<Rational>) -> Result<bool, Overflow>;
    fn rank(self, delta: Option<Rational>) -> Result<u64, Overflow>;
    fn max0(self) -> Self {
        self.max(Self::ZERO)
    }
}

impl Number for u64 {
    const ZERO: Self = 0;
    fn add(self, rhs: Self) -> Result<Self, Overflow> {
        self.checked_add(rhs).ok_or(Overflow)
    }
    fn mul(self, rhs: Self) -> Result<Self, Overflow> {
        self.checked_mul(rhs).ok_or(Overflow)
    }
    fn above(self, rhs: Self, _: Option<Rational>) -> Result<bool, Overflow> {
        Ok(self > rhs)
    }
    fn rank(self, _: Option<Rational>) -> Result<u64, Overflow> {
        Ok(self)
    }
}

impl Number for i64 {
    const ZERO: Self = 0;
    fn add(self, rhs: Self) -> Result<Self, Overflow> {
        self.checked_add(rhs).ok_or(Overflow)
    }
    fn mul(self, rhs: Self) -> Result<Self, Overflow> {
        self.checked_mul(rhs).ok_or(Overflow)
    }
    fn above(self, rhs: Self, _: Option<Rational>) -> Result<bool, Overflow> {
        Ok(self > rhs)
    }
    fn rank(self, _: Option<Rational>) -> Result<u64, Overflow> {
        Ok(self.max(0) as u64)
    }
}

impl Number for Rational {
    const ZERO: Self = Rational::ZERO;
    fn add(self, rhs: Self) -> Result<Self, Overflow> {
        self.checked_add(rhs)
    }
    fn mul(self, rhs: Self) -> Result<Self, Overflow> {
        self.checked_mul(rhs)
    }
    fn above(self, rhs: Self, delta: Option<Rational>) -> Result<bool, Overflow> {
        let delta = delta.expect("rational carriers always carry delta");
        Ok(self.checked_sub(rhs)? >= delta)
    }
    fn rank(self, delta: Option<Rational>) -> Result<u64, Overflow> {
        let delta = delta.expect("rational carriers always carry delta");
        Ok(self.floor_div(delta)?.max(0) as u64)
    }
}

fn arctic_add<T: Number>(a: Arctic<T>, b: Arctic<T>) -> Arctic<T> {
    match (a, b) {
        (Arctic::NegInf, x) | (x, Arctic::NegInf) => x,
        (Arctic::Finite(x), Arctic::Finite(y)) => Arctic::Finite(x.max(y)),
    }
}

fn arctic_mul<T: Number>(a: Arctic<T>, b: Arctic<T>) -> Result<Arctic<T>, Overflow> {
    match (a, b) {
        (Arctic::Finite(x), Arctic::Finite(y)) => Ok(Arctic::Finite(x.add(y)?)),
        _ => Ok(Arctic::NegInf),
    }
}

fn arctic_ge<T: Number>(a: Arctic<T>, b: Arctic<T>) -> bool {
    match (a, b) {
        (_, Arctic::NegInf) => true,
        (Arctic::NegInf, Arctic::Finite(_)) => false,
        (Arctic::Finite(x), Arctic::Finite(y)) => x >= y,
    }
}

fn arctic_gt<T: Number>(
    a: Arctic<T>,
    b: Arctic<T>,
    delta: Option<Rational>,
) -> Result<bool, Overflow> {
    match (a, b) {
        (_, Arctic::NegInf) => Ok(true),
        (Arctic::NegInf, Arctic::Finite(_)) => Ok(false),
        (Arctic::Finite(x), Arctic::Finite(y)) => x.above(y, delta),
    }
}

fn arctic_pos<T: Number>(a: Arctic<T>) -> bool {
    matches!(a, Arctic::Finite(x) if x >= T::ZERO)
}

fn arctic_rank<T: Number>(a: Arctic<T>, delta: Option<Rational>) -> Result<Option<u64>, Overflow> {
    match a {
        Arctic::NegInf => Ok(None),
        Arctic::Finite(x) => x.rank(delta).map(Some),
    }
}

enum Pair {
    Nat(u64, u64),
    Int(i64, i64),
    Rat(Rational, Rational),
    ArcticNat(Arctic<u64>, Arctic<u64>),
    ArcticInt(Arctic<i64>, Arctic<i64>),
    ArcticRat(Arctic<Rational>, Arctic<Rational>),
}

/// A scalar carrier together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CarrierSpec {
    kind: CarrierKind,
    delta: Option<Rational>,
}

impl CarrierSpec {
    /// `delta` must be present and positive exactly for the rational kinds.
    pub fn new(kind: CarrierKind, delta: Option<Rational>) -> Result<Self, AlgebraError> {
        match (kind.needs_delta(), delta) {
            (true, None) => Err(AlgebraError::InvalidCarrier(format!(
                "carrier {kind} requires delta"
            ))),
            (true, Some(d)) if d <= Rational::ZERO => Err(AlgebraError::InvalidCarrier(
                format!("delta must be positive, got {d}"),
            )),
            (false, Some(_)) => Err(AlgebraError::InvalidCarrier(format!(
                "carrier {kind} takes no delta"
            ))),
            _ => Ok(CarrierSpec { kind, delta }),
        }
    }

    pub fn nat() -> Self {
        CarrierSpec { kind: CarrierKind::Nat, delta: None }
    }

    pub fn int() -> Self {
        CarrierSpec { kind: CarrierKind::Int, delta: None }
    }

    pub fn rat(delta: Rational) -> Result<Self, AlgebraError> {
        Self::new(CarrierKind::Rat, Some(delta))
    }

    pub fn arctic_nat() -> Self {
        CarrierSpec { kind: CarrierKind::ArcticNat, delta: None }
    }

    pub fn arctic_int() -> Self {
        CarrierSpec { kind: CarrierKind::ArcticInt, delta: None }
    }

    pub fn arctic_rat(delta: Rational) -> Result<Self, AlgebraError> {
        Self::new(CarrierKind::ArcticRat, Some(delta))
    }

    pub fn kind(&self) -> CarrierKind {
        self.kind
    }

    pub fn delta(&self) -> Option<Rational> {
        self.delta
    }

    pub fn is_arctic(&self) -> bool {
        self.kind.is_arctic()
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        a.kind() == self.kind
    }

    fn check(&self, a: &Scalar) -> Result<(), AlgebraError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(AlgebraError::CarrierMismatch {
                carrier: self.to_string(),
                value: format!("{a} ({})", a.kind()),
            })
        }
    }

    fn pair(&self, a: &Scalar, b: &Scalar) -> Result<Pair, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (*a, *b) {
            (Scalar::Nat(x), Scalar::Nat(y)) => Pair::Nat(x, y),
            (Scalar::Int(x), Scalar::Int(y)) => Pair::Int(x, y),
            (Scalar::Rat(x), Scalar::Rat(y)) => Pair::Rat(x, y),
            (Scalar::ArcticNat(x), Scalar::ArcticNat(y)) => Pair::ArcticNat(x, y),
            (Scalar::ArcticInt(x), Scalar::ArcticInt(y)) => Pair::ArcticInt(x, y),
            (Scalar::ArcticRat(x), Scalar::ArcticRat(y)) => Pair::ArcticRat(x, y),
            _ => unreachable!("both operands were checked against the same kind"),
        })
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            CarrierKind::Nat => Scalar::Nat(0),
            CarrierKind::Int => Scalar::Int(0),
            CarrierKind::Rat => Scalar::Rat(Rational::ZERO),
            CarrierKind::ArcticNat => Scalar::ArcticNat(Arctic::NegInf),
            CarrierKind::ArcticInt => Scalar::ArcticInt(Arctic::NegInf),
            CarrierKind::ArcticRat => Scalar::ArcticRat(Arctic::NegInf),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.kind {
            CarrierKind::Nat => Scalar::Nat(1),
            CarrierKind::Int => Scalar::Int(1),
            CarrierKind::Rat => Scalar::Rat(Rational::ONE),
            CarrierKind::ArcticNat => Scalar::ArcticNat(Arctic::Finite(0)),
            CarrierKind::ArcticInt => Scalar::ArcticInt(Arctic::Finite(0)),
            CarrierKind::ArcticRat => Scalar::ArcticRat(Arctic::Finite(Rational::ZERO)),
        }
    }

    /// The finite element with numeric value `q`, if the carrier has one.
    pub fn finite(&self, q: Rational) -> Option<Scalar> {
        let int = q.is_integer().then_some(q.numer());
        let nat = int.and_then(|n| u64::try_from(n).ok());
        match self.kind {
            CarrierKind::Nat => nat.map(Scalar::Nat),
            CarrierKind::Int => int.map(Scalar::Int),
            CarrierKind::Rat => Some(Scalar::Rat(q)),
            CarrierKind::ArcticNat => nat.map(|n| Scalar::ArcticNat(Arctic::Finite(n))),
            CarrierKind::ArcticInt => int.map(|n| Scalar::ArcticInt(Arctic::Finite(n))),
            CarrierKind::ArcticRat => Some(Scalar::ArcticRat(Arctic::Finite(q))),
        }
    }

    pub fn from_int(&self, n: i64) -> Option<Scalar> {
        self.finite(Rational::from_integer(n))
    }

    /// `-inf` on arctic carriers, `None` otherwise.
    pub fn neg_inf(&self) -> Option<Scalar> {
        self.is_arctic().then(|| self.zero())
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, AlgebraError> {
        Ok(match self.pair(a, b)? {
            Pair::Nat(x, y) => Scalar::Nat(x.add(y)?),
            Pair::Int(x, y) => Scalar::Int(x.add(y)?),
            Pair::Rat(x, y) => Scalar::Rat(x.add(y)?),
            Pair::ArcticNat(x, y) => Scalar::ArcticNat(arctic_add(x, y)),
            Pair::ArcticInt(x, y) => Scalar::ArcticInt(arctic_add(x, y)),
            Pair::ArcticRat(x, y) => Scalar::ArcticRat(arctic_add(x, y)),
        })
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, AlgebraError> {
        Ok(match self.pair(a, b)? {
            Pair::Nat(x, y) => Scalar::Nat(x.mul(y)?),
            Pair::Int(x, y) => Scalar::Int(x.mul(y)?),
            Pair::Rat(x, y) => Scalar::Rat(x.mul(y)?),
            Pair::ArcticNat(x, y) => Scalar::ArcticNat(arctic_mul(x, y)?),
            Pair::ArcticInt(x, y) => Scalar::ArcticInt(arctic_mul(x, y)?),
            Pair::ArcticRat(x, y) => Scalar::ArcticRat(arctic_mul(x, y)?),
        })
    }

    pub fn weak_ge(&self, a: &Scalar, b: &Scalar) -> Result<bool, AlgebraError> {
        Ok(match self.pair(a, b)? {
            Pair::Nat(x, y) => x >= y,
            Pair::Int(x, y) => x >= y,
            Pair::Rat(x, y) => x >= y,
            Pair::ArcticNat(x, y) => arctic_ge(x, y),
            Pair::ArcticInt(x, y) => arctic_ge(x, y),
            Pair::ArcticRat(x, y) => arctic_ge(x, y),
        })
    }

    /// On arctic carriers every value, `-inf` included, is above `-inf`.
    pub fn strict_gt(&self, a: &Scalar, b: &Scalar) -> Result<bool, AlgebraError> {
        let d = self.delta;
        Ok(match self.pair(a, b)? {
            Pair::Nat(x, y) => x.above(y, d)?,
            Pair::Int(x, y) => x.above(y, d)?,
            Pair::Rat(x, y) => x.above(y, d)?,
            Pair::ArcticNat(x, y) => arctic_gt(x, y, d)?,
            Pair::ArcticInt(x, y) => arctic_gt(x, y, d)?,
            Pair::ArcticRat(x, y) => arctic_gt(x, y, d)?,
        })
    }

    /// `mono` (`a ≥ 1`) on plain carriers, `pos` (finite and `≥ 0`) on
    /// arctic ones.
    pub fn growth_pred(&self, a: &Scalar) -> Result<bool, AlgebraError> {
        self.check(a)?;
        Ok(match *a {
            Scalar::Nat(x) => x >= 1,
            Scalar::Int(x) => x >= 1,
            Scalar::Rat(x) => x >= Rational::ONE,
            Scalar::ArcticNat(x) => arctic_pos(x),
            Scalar::ArcticInt(x) => arctic_pos(x),
            Scalar::ArcticRat(x) => arctic_pos(x),
        })
    }

    pub fn max0(&self, a: &Scalar) -> Result<Scalar, AlgebraError> {
        self.check(a)?;
        match *a {
            Scalar::Nat(x) => Ok(Scalar::Nat(x)),
            Scalar::Int(x) => Ok(Scalar::Int(x.max0())),
            Scalar::Rat(x) => Ok(Scalar::Rat(x.max0())),
            _ => Err(AlgebraError::Unsupported {
                operation: "max0",
                carrier: self.to_string(),
            }),
        }
    }

    /// Well-foundedness witness: whenever `x > y` and `y` lies in the guarded
    /// zone (`y ≥ 0`, resp. `pos(y)`), `rank(x) > rank(y)`. `None` for `-inf`.
    pub fn rank(&self, a: &Scalar) -> Result<Option<u64>, AlgebraError> {
        self.check(a)?;
        let d = self.delta;
        Ok(match *a {
            Scalar::Nat(x) => Some(x.rank(d)?),
            Scalar::Int(x) => Some(x.rank(d)?),
            Scalar::Rat(x) => Some(x.rank(d)?),
            Scalar::ArcticNat(x) => arctic_rank(x, d)?,
            Scalar::ArcticInt(x) => arctic_rank(x, d)?,
            Scalar::ArcticRat(x) => arctic_rank(x, d)?,
        })
    }

    /// Guard of the well-founded part of `>`: `y ≥ 0` or `pos(y)`.
    pub fn in_well_founded_zone(&self, a: &Scalar) -> Result<bool, AlgebraError> {
        if self.is_arctic() {
            self.growth_pred(a)
        } else {
            self.weak_ge(a, &self.zero())
        }
    }

    /// Parses a scalar literal: decimal integers, `p/q` for rationals and
    /// `-inf` on arctic carriers.
    pub fn parse_scalar(&self, literal: &str) -> Result<Scalar, ParseScalarError> {
        let lit = literal.trim();
        let invalid = || ParseScalarError::Invalid {
            literal: literal.to_string(),
            carrier: self.kind.name().to_string(),
        };
        if lit == "-inf" {
            return self.neg_inf().ok_or_else(invalid);
        }
        match self.kind {
            CarrierKind::Nat | CarrierKind::ArcticNat => {
                let n: u64 = lit.parse().map_err(|_| invalid())?;
                Ok(match self.kind {
                    CarrierKind::Nat => Scalar::Nat(n),
                    _ => Scalar::ArcticNat(Arctic::Finite(n)),
                })
            }
            CarrierKind::Int | CarrierKind::ArcticInt => {
                let n: i64 = lit.parse().map_err(|_| invalid())?;
                Ok(match self.kind {
                    CarrierKind::Int => Scalar::Int(n),
                    _ => Scalar::ArcticInt(Arctic::Finite(n)),
                })
            }
            CarrierKind::Rat | CarrierKind::ArcticRat => {
                let q: Rational = lit.parse().map_err(|source| ParseScalarError::Rational {
                    literal: literal.to_string(),
                    source,
                })?;
                Ok(self.finite(q).expect("rational carriers contain every rational"))
            }
        }
    }

    /// Numeric order on finite values, `-inf` below everything. Used for
    /// rendering and grid sorting, not for orientation.
    pub fn numeric_cmp(a: &Scalar, b: &Scalar) -> Option<Ordering> {
        fn key(s: &Scalar) -> Option<Rational> {
            match *s {
                Scalar::Nat(n) => i64::try_from(n).ok().map(Rational::from_integer),
                Scalar::Int(n) => Some(Rational::from_integer(n)),
                Scalar::Rat(q) => Some(q),
                Scalar::ArcticNat(Arctic::Finite(n)) => {
                    i64::try_from(n).ok().map(Rational::from_integer)
                }
                Scalar::ArcticInt(Arctic::Finite(n)) => Some(Rational::from_integer(n)),
                Scalar::ArcticRat(Arctic::Finite(q)) => Some(q),
                _ => None,
            }
        }
        if a.kind() != b.kind() {
            return None;
        }
        Some(key(a).cmp(&key(b)))
    }
}

impl fmt::Display for CarrierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.delta {
            Some(d) => write!(f, "{}(delta={d})", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}
