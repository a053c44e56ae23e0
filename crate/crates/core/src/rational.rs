//! Exact rationals over `i64`, always kept in lowest terms.
//!
//! Every arithmetic operation is checked: intermediate products are formed in
//! `i128` and the reduced result must fit back into `i64`, otherwise
//! [`Overflow`] is returned.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("arithmetic overflow in exact rational computation")]
pub struct Overflow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    Integer(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// A normalized fraction: `den > 0` and `gcd(num, den) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self, ParseRationalError> {
        if den == 0 {
            return Err(ParseRationalError::ZeroDenominator);
        }
        Ok(Self::reduce(num as i128, den as i128)?)
    }

    pub fn from_integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    fn reduce(num: i128, den: i128) -> Result<Self, Overflow> {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num, den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num == 0 {
            den = 1;
        }
        Ok(Rational {
            num: i64::try_from(num).map_err(|_| Overflow)?,
            den: i64::try_from(den).map_err(|_| Overflow)?,
        })
    }

    pub fn numer(self) -> i64 {
        self.num
    }

    pub fn denom(self) -> i64 {
        self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn is_negative(self) -> bool {
        self.num < 0
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, Overflow> {
        let num = self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128;
        Self::reduce(num, self.den as i128 * rhs.den as i128)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, Overflow> {
        let num = self.num as i128 * rhs.den as i128 - rhs.num as i128 * self.den as i128;
        Self::reduce(num, self.den as i128 * rhs.den as i128)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self, Overflow> {
        Self::reduce(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
        )
    }

    /// `⌊self / rhs⌋` for positive `rhs`.
    pub fn floor_div(self, rhs: Self) -> Result<i64, Overflow> {
        debug_assert!(rhs.num > 0);
        let n = self.num as i128 * rhs.den as i128;
        let d = self.den as i128 * rhs.num as i128;
        i64::try_from(n.div_euclid(d)).map_err(|_| Overflow)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p` or `p/q` with optionally signed decimal integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let int = |t: &str| -> Result<i64, ParseRationalError> {
            t.trim()
                .parse::<i64>()
                .map_err(|_| ParseRationalError::Integer(t.to_string()))
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(int(s)?)),
            Some((p, q)) => Rational::new(int(p)?, int(q)?),
        }
    }
}
