//! Exact scalars, vectors and matrices.
//!
//! Every quantity in the crate is an arbitrary-precision rational. Dual-space
//! objects (normal vectors, slopes, subgradients) use the same [`QVector`]
//! type; the pairing between a space and its dual is the ordinary dot product.

use std::fmt;
use std::ops::{Add, Deref, Index, Mul, Neg, Sub};
use std::slice::SliceIndex;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the literal syntax `p/q` (or `p` when the denominator is one).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        line: 0,
        column: 0,
        message: format!("invalid rational literal `{text}`"),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = match den {
        Some(d) => {
            if d.starts_with('+') || d.starts_with('-') {
                return Err(bad());
            }
            BigInt::from_str(d).map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Positive factor that turns `entries` into coprime integers. Returns one
/// for the zero vector.
pub fn primitive_factor<'a>(entries: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    let entries: Vec<&Rational> = entries.into_iter().collect();
    for e in &entries {
        lcm = lcm.lcm(e.denom());
    }
    for e in &entries {
        let scaled = e.numer() * (&lcm / e.denom());
        gcd = gcd.gcd(&scaled);
    }
    if gcd.is_zero() {
        return Rational::one();
    }
    Rational::new(lcm, gcd)
}

/// Finite-dimensional vector of rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        entries.iter().map(|&e| int(e)).collect()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, k: &Rational) -> QVector {
        self.0.iter().map(|e| e * k).collect()
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: &Rational, other: &QVector) -> QVector {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a + k * b)
            .collect()
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: Rational) -> QVector {
        let mut entries = self.0.clone();
        entries.push(last);
        QVector(entries)
    }

    /// Drops the last coordinate.
    pub fn truncated(&self) -> QVector {
        QVector(self.0[..self.0.len() - 1].to_vec())
    }

    pub fn first_nonzero(&self) -> Option<&Rational> {
        self.0.iter().find(|e| !e.is_zero())
    }

    /// Positive rescaling to coprime integer entries (direction preserved).
    pub fn primitive(&self) -> QVector {
        self.scale(&primitive_factor(&self.0))
    }

    /// Coprime integer entries with the first nonzero entry positive.
    pub fn primitive_signed(&self) -> QVector {
        let p = self.primitive();
        match p.first_nonzero() {
            Some(f) if f.is_negative() => -&p,
            _ => p,
        }
    }
}

impl Deref for QVector {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl<I: SliceIndex<[Rational]>> Index<I> for QVector {
    type Output = I::Output;

    fn index(&self, i: I) -> &I::Output {
        &self.0[i]
    }
}

impl FromIterator<Rational> for QVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl From<Vec<Rational>> for QVector {
    fn from(v: Vec<Rational>) -> Self {
        QVector(v)
    }
}

impl Add for &QVector {
    type Output = QVector;

    fn add(self, rhs: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect()
    }
}

impl Sub for &QVector {
    type Output = QVector;

    fn sub(self, rhs: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect()
    }
}

impl Neg for &QVector {
    type Output = QVector;

    fn neg(self) -> QVector {
        self.0.iter().map(|a| -a).collect()
    }
}

impl Mul<&Rational> for &QVector {
    type Output = QVector;

    fn mul(self, k: &Rational) -> QVector {
        self.scale(k)
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Dense rational matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: Vec<QVector>,
    ncols: usize,
}

impl QMatrix {
    /// Panics if a row does not have `ncols` entries.
    pub fn from_rows(ncols: usize, rows: Vec<QVector>) -> Self {
        assert!(
            rows.iter().all(|r| r.dim() == ncols),
            "matrix rows must all have {ncols} columns"
        );
        QMatrix { rows, ncols }
    }

    pub fn empty(ncols: usize) -> Self {
        QMatrix {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|i| QVector::unit(n, i)).collect())
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self::from_rows(ncols, vec![QVector::zeros(ncols); nrows])
    }

    pub fn from_i64s(ncols: usize, rows: &[&[i64]]) -> Self {
        Self::from_rows(ncols, rows.iter().map(|r| QVector::from_i64s(r)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<QVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> QVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul_vec(&self, x: &QVector) -> QVector {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_rows(
            self.nrows(),
            (0..self.ncols).map(|j| self.column(j)).collect(),
        )
    }

    /// `self * other`
    pub fn compose(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, other.nrows());
        let t = other.transpose();
        QMatrix::from_rows(
            other.ncols(),
            self.rows
                .iter()
                .map(|r| t.rows.iter().map(|c| r.dot(c)).collect())
                .collect(),
        )
    }

    pub fn push_row(&mut self, row: QVector) {
        assert_eq!(row.dim(), self.ncols);
        self.rows.push(row);
    }
}
