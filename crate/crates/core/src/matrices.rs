//! Square matrices over a scalar carrier, and the [`Domain`] / [`Value`] pair
//! that lets the rest of the crate treat scalar and matrix carriers alike.
//!
//! Over a plain base the strict order and the monotonicity predicate only
//! look at the upper-left `sd × sd` block; over an arctic base the strict
//! order is entry-wise on all entries and `pos` inspects entry `(0, 0)`.

use std::fmt;

use crate::algebra::{AlgebraError, CarrierSpec, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatrixSpec {
    base: CarrierSpec,
    dim: usize,
    sd: Option<usize>,
}

impl MatrixSpec {
    /// For plain bases `sd` defaults to 1 and must satisfy `0 < sd ≤ dim`;
    /// arctic bases take no strict dimension.
    pub fn new(base: CarrierSpec, dim: usize, sd: Option<usize>) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::InvalidCarrier(
                "matrix dimension must be positive".into(),
            ));
        }
        let sd = if base.is_arctic() {
            if sd.is_some() {
                return Err(AlgebraError::InvalidCarrier(
                    "arctic matrices take no strict dimension".into(),
                ));
            }
            None
        } else {
            let sd = sd.unwrap_or(1);
            if sd == 0 || sd > dim {
                return Err(AlgebraError::InvalidCarrier(format!(
                    "strict dimension {sd} outside 1..={dim}"
                )));
            }
            Some(sd)
        };
        Ok(MatrixSpec { base, dim, sd })
    }

    pub fn base(&self) -> &CarrierSpec {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sd(&self) -> Option<usize> {
        self.sd
    }

    pub fn is_arctic(&self) -> bool {
        self.base.is_arctic()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.dim == self.dim && m.entries.iter().all(|e| self.base.contains(e))
    }

    fn check(&self, m: &Matrix) -> Result<(), AlgebraError> {
        if m.dim != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: m.dim,
            });
        }
        match m.entries.iter().find(|e| !self.base.contains(e)) {
            None => Ok(()),
            Some(e) => Err(AlgebraError::CarrierMismatch {
                carrier: self.to_string(),
                value: e.to_string(),
            }),
        }
    }

    pub fn zero(&self) -> Matrix {
        Matrix::filled(self.dim, self.base.zero())
    }

    pub fn one(&self) -> Matrix {
        self.diagonal(self.base.one())
    }

    /// `d` on the diagonal, `⊥0` elsewhere.
    pub fn diagonal(&self, d: Scalar) -> Matrix {
        let mut m = self.zero();
        for i in 0..self.dim {
            m.entries[i * self.dim + i] = d;
        }
        m
    }

    pub fn add(&self, a: &Matrix, b: &Matrix) -> Result<Matrix, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let entries = a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| self.base.add(x, y))
            .collect::<Result<_, _>>()?;
        Ok(Matrix { dim: self.dim, entries })
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.base.zero();
                for k in 0..n {
                    let p = self.base.mul(a.get(i, k), b.get(k, j))?;
                    acc = self.base.add(&acc, &p)?;
                }
                entries.push(acc);
            }
        }
        Ok(Matrix { dim: n, entries })
    }

    fn all_entries(
        &self,
        a: &Matrix,
        b: &Matrix,
        rel: impl Fn(&Scalar, &Scalar) -> Result<bool, AlgebraError>,
    ) -> Result<bool, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        for (x, y) in a.entries.iter().zip(&b.entries) {
            if !rel(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn weak_ge(&self, a: &Matrix, b: &Matrix) -> Result<bool, AlgebraError> {
        self.all_entries(a, b, |x, y| self.base.weak_ge(x, y))
    }

    pub fn strict_gt(&self, a: &Matrix, b: &Matrix) -> Result<bool, AlgebraError> {
        match self.sd {
            None => self.all_entries(a, b, |x, y| self.base.strict_gt(x, y)),
            Some(sd) => {
                if !self.weak_ge(a, b)? {
                    return Ok(false);
                }
                for i in 0..sd {
                    for j in 0..sd {
                        if self.base.strict_gt(a.get(i, j), b.get(i, j))? {
                            return Ok(true);
                        }
                    }
                }
                Ok(false)
            }
        }
    }

    /// Plain base: every column of the `sd × sd` block has a `mono` entry in
    /// that block. Arctic base: `pos` of the top-left entry.
    pub fn growth_pred(&self, a: &Matrix) -> Result<bool, AlgebraError> {
        self.check(a)?;
        match self.sd {
            None => self.base.growth_pred(a.get(0, 0)),
            Some(sd) => {
                for j in 0..sd {
                    let mut found = false;
                    for i in 0..sd {
                        if self.base.growth_pred(a.get(i, j))? {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn max0(&self, a: &Matrix) -> Result<Matrix, AlgebraError> {
        self.check(a)?;
        let entries = a
            .entries
            .iter()
            .map(|e| self.base.max0(e))
            .collect::<Result<_, _>>()?;
        Ok(Matrix { dim: self.dim, entries })
    }

    /// Sum of base ranks over the `sd × sd` block; for arctic bases the rank
    /// of entry `(0, 0)`.
    pub fn rank(&self, a: &Matrix) -> Result<Option<u64>, AlgebraError> {
        self.check(a)?;
        match self.sd {
            None => self.base.rank(a.get(0, 0)),
            Some(sd) => {
                let mut total: u64 = 0;
                for i in 0..sd {
                    for j in 0..sd {
                        let r = self.base.rank(a.get(i, j))?.unwrap_or(0);
                        total = total
                            .checked_add(r)
                            .ok_or(AlgebraError::Overflow(crate::rational::Overflow))?;
                    }
                }
                Ok(Some(total))
            }
        }
    }

    pub fn in_well_founded_zone(&self, a: &Matrix) -> Result<bool, AlgebraError> {
        if self.is_arctic() {
            self.growth_pred(a)
        } else {
            self.weak_ge(a, &self.zero())
        }
    }
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}x{}", self.base, self.dim, self.dim)?;
        if let Some(sd) = self.sd {
            write!(f, "(sd={sd})")?;
        }
        Ok(())
    }
}

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn filled(dim: usize, value: Scalar) -> Self {
        Matrix {
            dim,
            entries: vec![value; dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, AlgebraError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(AlgebraError::InvalidCarrier("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.dim)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// The carrier an interpretation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Scalar(CarrierSpec),
    Matrix(MatrixSpec),
}

/// An element of a [`Domain`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Scalar(Scalar),
    Matrix(Matrix),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => s.fmt(f),
            Value::Matrix(m) => m.fmt(f),
        }
    }
}

impl From<Scalar> for Value {
    fn from(s: Scalar) -> Self {
        Value::Scalar(s)
    }
}

impl From<Matrix> for Value {
    fn from(m: Matrix) -> Self {
        Value::Matrix(m)
    }
}

impl Value {
    pub fn is_arctic(&self) -> bool {
        match self {
            Value::Scalar(s) => s.kind().is_arctic(),
            Value::Matrix(m) => m.entries.first().is_some_and(|e| e.kind().is_arctic()),
        }
    }
}

fn mismatch(domain: &Domain, v: &Value) -> AlgebraError {
    AlgebraError::CarrierMismatch {
        carrier: domain.to_string(),
        value: v.to_string(),
    }
}

macro_rules! lift_binary {
    ($name:ident, $out:ty, $wrap:expr) => {
        pub fn $name(&self, a: &Value, b: &Value) -> Result<$out, AlgebraError> {
            match (self, a, b) {
                (Domain::Scalar(c), Value::Scalar(x), Value::Scalar(y)) => c.$name(x, y).map($wrap),
                (Domain::Matrix(m), Value::Matrix(x), Value::Matrix(y)) => m.$name(x, y).map($wrap),
                _ => {
                    let shape_ok = |v: &Value| matches!((self, v), (Domain::Scalar(_), Value::Scalar(_)) | (Domain::Matrix(_), Value::Matrix(_)));
                    Err(mismatch(self, if shape_ok(a) { b } else { a }))
                }
            }
        }
    };
}

impl Domain {
    pub fn base(&self) -> &CarrierSpec {
        match self {
            Domain::Scalar(c) => c,
            Domain::Matrix(m) => m.base(),
        }
    }

    pub fn is_arctic(&self) -> bool {
        self.base().is_arctic()
    }

    pub fn supports_max0(&self) -> bool {
        !self.is_arctic()
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Domain::Scalar(c), Value::Scalar(s)) => c.contains(s),
            (Domain::Matrix(m), Value::Matrix(x)) => m.contains(x),
            _ => false,
        }
    }

    pub fn zero(&self) -> Value {
        match self {
            Domain::Scalar(c) => Value::Scalar(c.zero()),
            Domain::Matrix(m) => Value::Matrix(m.zero()),
        }
    }

    pub fn one(&self) -> Value {
        match self {
            Domain::Scalar(c) => Value::Scalar(c.one()),
            Domain::Matrix(m) => Value::Matrix(m.one()),
        }
    }

    /// `s` as a scalar, or `s` on the diagonal of a matrix domain.
    pub fn embed(&self, s: Scalar) -> Value {
        match self {
            Domain::Scalar(_) => Value::Scalar(s),
            Domain::Matrix(m) => Value::Matrix(m.diagonal(s)),
        }
    }

    lift_binary!(add, Value, Value::from);
    lift_binary!(mul, Value, Value::from);
    lift_binary!(weak_ge, bool, |b| b);
    lift_binary!(strict_gt, bool, |b| b);

    pub fn growth_pred(&self, a: &Value) -> Result<bool, AlgebraError> {
        match (self, a) {
            (Domain::Scalar(c), Value::Scalar(x)) => c.growth_pred(x),
            (Domain::Matrix(m), Value::Matrix(x)) => m.growth_pred(x),
            _ => Err(mismatch(self, a)),
        }
    }

    pub fn max0(&self, a: &Value) -> Result<Value, AlgebraError> {
        match (self, a) {
            (Domain::Scalar(c), Value::Scalar(x)) => c.max0(x).map(Value::Scalar),
            (Domain::Matrix(m), Value::Matrix(x)) => m.max0(x).map(Value::Matrix),
            _ => Err(mismatch(self, a)),
        }
    }

    pub fn rank(&self, a: &Value) -> Result<Option<u64>, AlgebraError> {
        match (self, a) {
            (Domain::Scalar(c), Value::Scalar(x)) => c.rank(x),
            (Domain::Matrix(m), Value::Matrix(x)) => m.rank(x),
            _ => Err(mismatch(self, a)),
        }
    }

    pub fn in_well_founded_zone(&self, a: &Value) -> Result<bool, AlgebraError> {
        match (self, a) {
            (Domain::Scalar(c), Value::Scalar(x)) => c.in_well_founded_zone(x),
            (Domain::Matrix(m), Value::Matrix(x)) => m.in_well_founded_zone(x),
            _ => Err(mismatch(self, a)),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Scalar(c) => c.fmt(f),
            Domain::Matrix(m) => m.fmt(f),
        }
    }
}
