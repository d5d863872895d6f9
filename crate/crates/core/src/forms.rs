//! The two descriptions of a polyhedral set.
//!
//! A [`ConstraintForm`] is the solution set of finitely many linear equations
//! and non-strict linear inequalities. A [`GeneratorForm`] is a convex hull of
//! points plus a finitely generated cone plus a linear subspace. Both are plain
//! data here; canonicalization and conversion live in [`crate::polyhedron`].

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{int, QMatrix, QVector, Rational};

/// One linear row `coeffs · x (= or <=) rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    pub coeffs: QVector,
    pub rhs: Rational,
}

impl Row {
    pub fn new(coeffs: QVector, rhs: Rational) -> Self {
        Row { coeffs, rhs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    /// `coeffs · x - rhs`
    pub fn slack(&self, x: &QVector) -> Rational {
        self.coeffs.dot(x) - &self.rhs
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Homogenized copy: the same normal with right-hand side zero.
    pub fn homogenized(&self) -> Row {
        Row::new(self.coeffs.clone(), Rational::zero())
    }

    /// Positive rescaling of the whole row to coprime integers.
    pub fn primitive(&self) -> Row {
        let k = crate::rational::primitive_factor(self.coeffs.iter().chain([&self.rhs]));
        Row::new(self.coeffs.scale(&k), &self.rhs * &k)
    }

    /// Coprime integers with the first nonzero entry positive (for equations).
    pub fn primitive_signed(&self) -> Row {
        let p = self.primitive();
        let first = p.coeffs.first_nonzero().unwrap_or(&p.rhs);
        if first.is_negative() {
            Row::new(-&p.coeffs, -p.rhs)
        } else {
            p
        }
    }

    /// Adds a trailing coordinate with coefficient `last`.
    pub fn lifted(&self, last: Rational) -> Row {
        Row::new(self.coeffs.extended(last), self.rhs.clone())
    }
}

/// `{x : eq_i · x = b_i, ineq_j · x <= a_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstraintForm {
    pub dim: usize,
    pub equalities: Vec<Row>,
    pub inequalities: Vec<Row>,
}

impl ConstraintForm {
    pub fn new(dim: usize) -> Self {
        ConstraintForm {
            dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    /// The whole space.
    pub fn universe(dim: usize) -> Self {
        Self::new(dim)
    }

    /// The canonical empty set: the single row `0 <= -1`.
    pub fn empty(dim: usize) -> Self {
        let mut c = Self::new(dim);
        c.inequalities.push(Row::new(QVector::zeros(dim), int(-1)));
        c
    }

    pub fn with_eq(mut self, coeffs: QVector, rhs: Rational) -> Self {
        assert_eq!(coeffs.dim(), self.dim);
        self.equalities.push(Row::new(coeffs, rhs));
        self
    }

    pub fn with_ineq(mut self, coeffs: QVector, rhs: Rational) -> Self {
        assert_eq!(coeffs.dim(), self.dim);
        self.inequalities.push(Row::new(coeffs, rhs));
        self
    }

    /// Convenience for tests and examples: integer rows.
    pub fn from_i64s(dim: usize, eqs: &[(&[i64], i64)], ineqs: &[(&[i64], i64)]) -> Self {
        let mut c = Self::new(dim);
        for (a, b) in eqs {
            c = c.with_eq(QVector::from_i64s(a), int(*b));
        }
        for (a, b) in ineqs {
            c = c.with_ineq(QVector::from_i64s(a), int(*b));
        }
        c
    }

    /// The map `A` of the equality system.
    pub fn eq_lhs(&self) -> QMatrix {
        QMatrix::from_rows(
            self.dim,
            self.equalities.iter().map(|r| r.coeffs.clone()).collect(),
        )
    }

    pub fn eq_rhs(&self) -> QVector {
        self.equalities.iter().map(|r| r.rhs.clone()).collect()
    }

    /// True for the sentinel produced by [`ConstraintForm::empty`].
    pub fn is_empty_sentinel(&self) -> bool {
        self.equalities.is_empty()
            && self.inequalities.len() == 1
            && self.inequalities[0].is_trivial()
            && self.inequalities[0].rhs.is_negative()
    }

    /// Direct evaluation of every row.
    pub fn satisfied_by(&self, x: &QVector) -> bool {
        self.equalities.iter().all(|r| r.slack(x).is_zero())
            && self.inequalities.iter().all(|r| !r.slack(x).is_positive())
    }

    /// Indices of inequalities holding with equality at `x`.
    pub fn active_indices(&self, x: &QVector) -> Vec<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, r)| r.slack(x).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Appends all rows of `other`.
    pub fn conjoin(&self, other: &ConstraintForm) -> ConstraintForm {
        assert_eq!(self.dim, other.dim);
        let mut c = self.clone();
        c.equalities.extend(other.equalities.iter().cloned());
        c.inequalities.extend(other.inequalities.iter().cloned());
        c
    }

    /// Every row with an extra trailing coordinate carrying coefficient zero.
    pub fn lifted(&self) -> ConstraintForm {
        ConstraintForm {
            dim: self.dim + 1,
            equalities: self
                .equalities
                .iter()
                .map(|r| r.lifted(Rational::zero()))
                .collect(),
            inequalities: self
                .inequalities
                .iter()
                .map(|r| r.lifted(Rational::zero()))
                .collect(),
        }
    }

    /// `{h : A h = 0, ineq_j · h <= 0}`
    pub fn homogenized(&self) -> ConstraintForm {
        ConstraintForm {
            dim: self.dim,
            equalities: self.equalities.iter().map(Row::homogenized).collect(),
            inequalities: self.inequalities.iter().map(Row::homogenized).collect(),
        }
    }

    /// `{x : x + shift ∈ self}`, i.e. the set translated by `-shift`.
    pub fn translated_back(&self, shift: &QVector) -> ConstraintForm {
        let tr = |r: &Row| Row::new(r.coeffs.clone(), &r.rhs - r.coeffs.dot(shift));
        ConstraintForm {
            dim: self.dim,
            equalities: self.equalities.iter().map(tr).collect(),
            inequalities: self.inequalities.iter().map(tr).collect(),
        }
    }
}

/// `conv(points) + cone(rays) + span(lineality)`. Empty iff `points` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorForm {
    pub dim: usize,
    pub points: Vec<QVector>,
    pub rays: Vec<QVector>,
    pub lineality: Vec<QVector>,
}

impl GeneratorForm {
    pub fn new(dim: usize) -> Self {
        GeneratorForm {
            dim,
            points: Vec::new(),
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    pub fn empty(dim: usize) -> Self {
        Self::new(dim)
    }

    pub fn origin(dim: usize) -> Self {
        Self::new(dim).with_point(QVector::zeros(dim))
    }

    pub fn with_point(mut self, p: QVector) -> Self {
        assert_eq!(p.dim(), self.dim);
        self.points.push(p);
        self
    }

    pub fn with_ray(mut self, r: QVector) -> Self {
        assert_eq!(r.dim(), self.dim);
        self.rays.push(r);
        self
    }

    pub fn with_line(mut self, l: QVector) -> Self {
        assert_eq!(l.dim(), self.dim);
        self.lineality.push(l);
        self
    }

    pub fn from_points(dim: usize, points: &[&[i64]]) -> Self {
        points
            .iter()
            .fold(Self::new(dim), |g, p| g.with_point(QVector::from_i64s(p)))
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Strictly positive combination of every generator: barycenter of the
    /// points plus the sum of the rays.
    pub fn interior_combination(&self) -> Option<QVector> {
        let first = self.points.first()?;
        let mut sum = QVector::zeros(first.dim());
        for p in &self.points {
            sum = &sum + p;
        }
        let n = Rational::from_integer(self.points.len().into());
        let mut x = sum.scale(&(Rational::one() / n));
        for r in &self.rays {
            x = &x + r;
        }
        Some(x)
    }
}

fn write_rows(f: &mut fmt::Formatter<'_>, c: &ConstraintForm) -> fmt::Result {
    for r in &c.equalities {
        writeln!(f, "eq {} = {}", r.coeffs, r.rhs)?;
    }
    for r in &c.inequalities {
        writeln!(f, "ineq {} <= {}", r.coeffs, r.rhs)?;
    }
    Ok(())
}

impl fmt::Display for ConstraintForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hrep dim={}", self.dim)?;
        write_rows(f, self)
    }
}

impl fmt::Display for GeneratorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vrep dim={}", self.dim)?;
        for p in &self.points {
            writeln!(f, "point {p}")?;
        }
        for r in &self.rays {
            writeln!(f, "ray {r}")?;
        }
        for l in &self.lineality {
            writeln!(f, "lin {l}")?;
        }
        Ok(())
    }
}

/// Rows only, without the `hrep` header (used inside function documents).
pub struct RowsDisplay<'a>(pub &'a ConstraintForm);

impl fmt::Display for RowsDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.0)
    }
}
