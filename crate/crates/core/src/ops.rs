//! Set-level calculus: membership and inclusion, sums, intersections,
//! images and preimages, hulls of unions, recession/generated/tangent/normal
//! cones, polars and strict separation.
//!
//! Dual-space results (normal cones, polars) are ordinary [`Polyhedron`]
//! values of the same dimension; a dual vector `y` acts on `x` as `y · x`.

use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::forms::{ConstraintForm, GeneratorForm, Row};
use crate::linalg::rowspace_basis;
use crate::lp::{self, LinearProgram, LpResult};
use crate::polyhedron::Polyhedron;
use crate::rational::{int, QMatrix, QVector, Rational};

/// A linear map given by its matrix (rows = output dimension).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    pub matrix: QMatrix,
}

impl LinearMap {
    pub fn new(matrix: QMatrix) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(QMatrix::identity(n))
    }

    pub fn input_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn output_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, x: &QVector) -> QVector {
        self.matrix.mul_vec(x)
    }

    /// `y ↦ yᵀ T`, the adjoint acting on dual vectors.
    pub fn adjoint(&self, y: &QVector) -> QVector {
        self.matrix.transpose().mul_vec(y)
    }
}

impl Polyhedron {
    pub fn contains(&self, x: &QVector) -> Result<bool> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.constraints().satisfied_by(x))
    }

    /// Every generator of `self` satisfies the constraints of `other`.
    pub fn is_subset_of(&self, other: &Polyhedron) -> Result<bool> {
        check_dim(self.dim(), other.dim())?;
        if self.is_empty() {
            return Ok(true);
        }
        if other.is_empty() {
            return Ok(false);
        }
        let g = self.generators();
        let c = other.constraints();
        let cone = c.homogenized();
        Ok(g.points.iter().all(|p| c.satisfied_by(p))
            && g.rays.iter().all(|r| cone.satisfied_by(r))
            && g.lineality
                .iter()
                .all(|w| cone.satisfied_by(w) && cone.satisfied_by(&-w)))
    }

    pub fn set_equal(&self, other: &Polyhedron) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim(), other.dim())?;
        if self.is_empty() || other.is_empty() {
            return Ok(Polyhedron::empty(self.dim()));
        }
        let (a, b) = (self.generators(), other.generators());
        let mut g = GeneratorForm::new(self.dim());
        for p in &a.points {
            for q in &b.points {
                g.points.push(p + q);
            }
        }
        g.rays.extend(a.rays.iter().chain(&b.rays).cloned());
        g.lineality
            .extend(a.lineality.iter().chain(&b.lineality).cloned());
        Ok(Polyhedron::from_generators(&g))
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim(), other.dim())?;
        Ok(Polyhedron::from_constraints(
            &self.constraints().conjoin(other.constraints()),
        ))
    }

    /// `{x + shift : x ∈ self}`
    pub fn translate(&self, shift: &QVector) -> Result<Polyhedron> {
        check_dim(self.dim(), shift.dim())?;
        Ok(Polyhedron::from_constraints(
            &self.constraints().translated_back(&-shift),
        ))
    }

    pub fn image(&self, map: &LinearMap) -> Result<Polyhedron> {
        check_dim(map.input_dim(), self.dim())?;
        let out = map.output_dim();
        if self.is_empty() {
            return Ok(Polyhedron::empty(out));
        }
        let g = self.generators();
        let mapped = GeneratorForm {
            dim: out,
            points: g.points.iter().map(|p| map.apply(p)).collect(),
            rays: g.rays.iter().map(|r| map.apply(r)).collect(),
            lineality: g.lineality.iter().map(|w| map.apply(w)).collect(),
        };
        Ok(Polyhedron::from_generators(&mapped))
    }

    /// `{x : T x ∈ self}`
    pub fn preimage(&self, map: &LinearMap) -> Result<Polyhedron> {
        check_dim(map.output_dim(), self.dim())?;
        let c = self.constraints();
        let pull = |r: &Row| Row::new(map.adjoint(&r.coeffs), r.rhs.clone());
        let pulled = ConstraintForm {
            dim: map.input_dim(),
            equalities: c.equalities.iter().map(pull).collect(),
            inequalities: c.inequalities.iter().map(pull).collect(),
        };
        Ok(Polyhedron::from_constraints(&pulled))
    }

    /// `0⁺P`, read off the generator form.
    pub fn recession_cone(&self) -> Result<Polyhedron> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let g = self.generators();
        let cone = GeneratorForm {
            dim: self.dim(),
            points: vec![QVector::zeros(self.dim())],
            rays: g.rays.clone(),
            lineality: g.lineality.clone(),
        };
        Ok(Polyhedron::from_generators(&cone))
    }

    /// `0⁺P`, read off the homogenized constraint form.
    pub fn recession_cone_from_constraints(&self) -> Result<Polyhedron> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Polyhedron::from_constraints(
            &self.constraints().homogenized(),
        ))
    }

    /// The cone generated by a set containing the origin.
    pub fn cone_of(&self) -> Result<Polyhedron> {
        if !self.contains(&QVector::zeros(self.dim()))? {
            return Err(Error::NotContainingOrigin);
        }
        let g = self.generators();
        let cone = GeneratorForm {
            dim: self.dim(),
            points: vec![QVector::zeros(self.dim())],
            rays: g.points.iter().chain(&g.rays).cloned().collect(),
            lineality: g.lineality.clone(),
        };
        Ok(Polyhedron::from_generators(&cone))
    }

    /// Indices of the canonical inequalities active at `x`.
    pub fn active_indices(&self, x: &QVector) -> Result<Vec<usize>> {
        if !self.contains(x)? {
            return Err(Error::PointNotInSet);
        }
        Ok(self.constraints().active_indices(x))
    }

    /// `T_P(x) = {h : A h = 0, a_i · h <= 0 for active i}`.
    pub fn tangent_cone(&self, x: &QVector) -> Result<Polyhedron> {
        let active = self.active_indices(x)?;
        let c = self.constraints();
        let cone = ConstraintForm {
            dim: self.dim(),
            equalities: c.equalities.iter().map(Row::homogenized).collect(),
            inequalities: active
                .iter()
                .map(|&i| c.inequalities[i].homogenized())
                .collect(),
        };
        Ok(Polyhedron::from_constraints(&cone))
    }

    /// `N_P(x) = cone{a_i : i active} + rowspace(A)`, in the dual space.
    pub fn normal_cone(&self, x: &QVector) -> Result<Polyhedron> {
        let active = self.active_indices(x)?;
        let c = self.constraints();
        let cone = GeneratorForm {
            dim: self.dim(),
            points: vec![QVector::zeros(self.dim())],
            rays: active
                .iter()
                .map(|&i| c.inequalities[i].coeffs.clone())
                .collect(),
            lineality: rowspace_basis(&c.eq_lhs()),
        };
        Ok(Polyhedron::from_generators(&cone))
    }

    /// `P° = {y : y·w = 0 (lines w), y·u <= 1 (points u), y·v <= 0 (rays v)}`.
    pub fn polar(&self) -> Result<Polyhedron> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let g = self.generators();
        let mut c = ConstraintForm::new(self.dim());
        for w in &g.lineality {
            c.equalities.push(Row::new(w.clone(), Rational::zero()));
        }
        for u in &g.points {
            c.inequalities.push(Row::new(u.clone(), int(1)));
        }
        for v in &g.rays {
            c.inequalities.push(Row::new(v.clone(), Rational::zero()));
        }
        Ok(Polyhedron::from_constraints(&c))
    }

    /// Strict separation of two nonempty sets, or a common point.
    ///
    /// The sets are disjoint iff the origin is outside `Q - P`, which holds
    /// iff some `y` has `y·d >= 1` on every point `d` of `Q - P`, `y·r >= 0`
    /// on its rays and `y·w = 0` on its lines. That feasibility problem is
    /// solved exactly.
    pub fn separate(&self, other: &Polyhedron) -> Result<Separation> {
        check_dim(self.dim(), other.dim())?;
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptySet);
        }
        let (a, b) = (self.generators(), other.generators());
        let n = self.dim();
        let mut c = ConstraintForm::new(n);
        for u in &a.points {
            for v in &b.points {
                c.inequalities.push(Row::new(u - v, int(-1)));
            }
        }
        for r in &b.rays {
            c.inequalities.push(Row::new(-r, Rational::zero()));
        }
        for r in &a.rays {
            c.inequalities.push(Row::new(r.clone(), Rational::zero()));
        }
        for w in a.lineality.iter().chain(&b.lineality) {
            c.equalities.push(Row::new(w.clone(), Rational::zero()));
        }
        let found = lp::solve(&LinearProgram {
            objective: QVector::zeros(n),
            constraints: c,
        });
        match found {
            LpResult::Optimal { point: y, .. } => {
                let sup_first = a.points.iter().map(|u| y.dot(u)).max().expect("nonempty");
                let inf_second = b.points.iter().map(|v| y.dot(v)).min().expect("nonempty");
                debug_assert!(sup_first < inf_second);
                Ok(Separation::Separated {
                    functional: y,
                    sup_first,
                    inf_second,
                })
            }
            _ => {
                let both = self.constraints().conjoin(other.constraints());
                match lp::solve(&LinearProgram {
                    objective: QVector::zeros(n),
                    constraints: both,
                }) {
                    LpResult::Optimal { point, .. } => {
                        Ok(Separation::Intersecting { witness: point })
                    }
                    _ => unreachable!("no separating functional implies a common point"),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    /// `sup_first = max over the first set of functional·x`, which is
    /// strictly below `inf_second = min over the second set`.
    Separated {
        functional: QVector,
        sup_first: Rational,
        inf_second: Rational,
    },
    Intersecting {
        witness: QVector,
    },
}

/// Closed convex hull of a union. Empty members are skipped.
pub fn hull_union(dim: usize, sets: &[Polyhedron]) -> Result<Polyhedron> {
    let mut g = GeneratorForm::new(dim);
    for p in sets {
        check_dim(dim, p.dim())?;
        if p.is_empty() {
            continue;
        }
        let pg = p.generators();
        g.points.extend(pg.points.iter().cloned());
        g.rays.extend(pg.rays.iter().cloned());
        g.lineality.extend(pg.lineality.iter().cloned());
    }
    if g.points.is_empty() {
        return Ok(Polyhedron::empty(dim));
    }
    Ok(Polyhedron::from_generators(&g))
}

/// Whether `y` lies in the normal cone of `p` at `x`, decided from the
/// definition: `y·(u - x) <= 0` for every point, `y·r <= 0` for every ray and
/// `y·w = 0` for every line of `p`.
pub fn satisfies_normal_cone_definition(p: &Polyhedron, x: &QVector, y: &QVector) -> bool {
    let g = p.generators();
    g.points.iter().all(|u| !y.dot(&(u - x)).is_positive())
        && g.rays.iter().all(|r| !y.dot(r).is_positive())
        && g.lineality.iter().all(|w| y.dot(w).is_zero())
}
