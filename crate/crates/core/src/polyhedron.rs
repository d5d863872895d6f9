//! Canonical forms, conversion between the two descriptions, and the
//! [`Polyhedron`] value that carries them.
//!
//! Canonical constraint form: equations are the reduced row echelon form of
//! the augmented system (each row scaled to coprime integers, leading entry
//! positive); inequalities are irredundant, contain no implicit equation,
//! have zero coefficients in the pivot columns of the equations, are scaled
//! to coprime integers and sorted. Two canonical constraint forms describe
//! the same set iff they are identical. The empty set is the single row
//! `0 <= -1`.
//!
//! Canonical generator form: the lineality basis is in reduced row echelon
//! form (rows scaled to coprime integers); points and rays are reduced to
//! have zero entries in its pivot columns, rays are primitive, and
//! everything is deduplicated and sorted.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::dd::cone_generators;
use crate::forms::{ConstraintForm, GeneratorForm, Row};
use crate::linalg::{nullspace_basis, rref, solve_affine};
use crate::lp::{feasible_point, maximize, LpResult};
use crate::rational::{QMatrix, QVector, Rational};

/// Row normalization without linear programming: echelon equations,
/// inequalities reduced modulo the equations, trivial rows dropped,
/// duplicates merged, rows sorted. Detects inconsistent equations and
/// trivially false inequalities.
pub fn tidy_constraints(c: &ConstraintForm) -> ConstraintForm {
    let dim = c.dim;
    let augmented = QMatrix::from_rows(
        dim + 1,
        c.equalities
            .iter()
            .map(|r| r.coeffs.extended(r.rhs.clone()))
            .collect(),
    );
    let echelon = rref(&augmented);
    if echelon.pivot_cols.last() == Some(&dim) {
        return ConstraintForm::empty(dim);
    }
    let eq_rows: Vec<QVector> = echelon.matrix.rows()[..echelon.rank].to_vec();
    let reduce = |row: &Row| -> Row {
        let mut full = row.coeffs.extended(row.rhs.clone());
        for (e, &p) in eq_rows.iter().zip(&echelon.pivot_cols) {
            let k = full[p].clone();
            if !k.is_zero() {
                full = full.add_scaled(&-k, e);
            }
        }
        Row::new(full.truncated(), full[dim].clone())
    };
    let mut best: BTreeMap<QVector, Rational> = BTreeMap::new();
    for r in &c.inequalities {
        let r = reduce(r);
        if r.is_trivial() {
            if r.rhs.is_negative() {
                return ConstraintForm::empty(dim);
            }
            continue;
        }
        let r = r.primitive_normal();
        best.entry(r.coeffs)
            .and_modify(|b| {
                if r.rhs < *b {
                    *b = r.rhs.clone();
                }
            })
            .or_insert(r.rhs);
    }
    ConstraintForm {
        dim,
        equalities: eq_rows
            .iter()
            .map(|e| Row::new(e.truncated(), e[dim].clone()).primitive_signed())
            .collect(),
        inequalities: {
            let mut rows: Vec<Row> = best
                .into_iter()
                .map(|(a, b)| Row::new(a, b).primitive())
                .collect();
            rows.sort();
            rows
        },
    }
}

impl Row {
    /// Positive rescaling so that the normal vector has coprime integer
    /// entries. Unlike [`Row::primitive`] the right-hand side may stay
    /// fractional, which keeps distinct half-spaces with the same normal
    /// comparable by their bound.
    pub fn primitive_normal(&self) -> Row {
        let k = crate::rational::primitive_factor(self.coeffs.iter());
        Row::new(self.coeffs.scale(&k), &self.rhs * &k)
    }
}

/// Removes redundant inequalities and turns implicit equations into
/// equations, then tidies.
pub fn canonicalize_constraints(c: &ConstraintForm) -> ConstraintForm {
    let mut cur = tidy_constraints(c);
    if cur.is_empty_sentinel() {
        return cur;
    }
    let Some(x0) = feasible_point(&cur) else {
        return ConstraintForm::empty(c.dim);
    };

    // implicit equations: min a·x over the set equals the bound
    let mut witnesses = vec![x0];
    let mut implicit = Vec::new();
    for (i, r) in cur.inequalities.iter().enumerate() {
        if witnesses.iter().any(|w| r.slack(w).is_negative()) {
            continue;
        }
        match maximize(&-&r.coeffs, &cur) {
            LpResult::Optimal { point, value } => {
                if -value == r.rhs {
                    implicit.push(i);
                } else {
                    witnesses.push(point);
                }
            }
            LpResult::Unbounded { .. } => {}
            LpResult::Infeasible => unreachable!("feasibility already established"),
        }
    }
    if !implicit.is_empty() {
        let mut next = ConstraintForm::new(c.dim);
        next.equalities = cur.equalities.clone();
        for (i, r) in cur.inequalities.iter().enumerate() {
            if implicit.contains(&i) {
                next.equalities.push(r.clone());
            } else {
                next.inequalities.push(r.clone());
            }
        }
        cur = tidy_constraints(&next);
    }

    // redundancy: drop a row when the others already imply it
    let mut i = 0;
    while i < cur.inequalities.len() {
        let row = cur.inequalities.remove(i);
        let implied = match maximize(&row.coeffs, &cur) {
            LpResult::Optimal { value, .. } => value <= row.rhs,
            _ => false,
        };
        if !implied {
            cur.inequalities.insert(i, row);
            i += 1;
        }
    }
    tidy_constraints(&cur)
}

/// Normalization of a generator form: lineality in echelon form, points and
/// rays reduced modulo it, zero rays dropped, duplicates merged, sorted.
/// Does not remove redundant points or rays.
pub fn tidy_generators(g: &GeneratorForm) -> GeneratorForm {
    let dim = g.dim;
    let echelon = rref(&QMatrix::from_rows(dim, g.lineality.clone()));
    let lin: Vec<QVector> = echelon.matrix.rows()[..echelon.rank].to_vec();
    let reduce = |v: &QVector| -> QVector {
        let mut v = v.clone();
        for (l, &p) in lin.iter().zip(&echelon.pivot_cols) {
            let k = v[p].clone();
            if !k.is_zero() {
                v = v.add_scaled(&-k, l);
            }
        }
        v
    };
    let mut points: Vec<QVector> = g.points.iter().map(reduce).collect();
    points.sort();
    points.dedup();
    let mut rays: Vec<QVector> = g
        .rays
        .iter()
        .map(|r| reduce(r).primitive())
        .filter(|r| !r.is_zero())
        .collect();
    rays.sort();
    rays.dedup();
    GeneratorForm {
        dim,
        points,
        rays,
        lineality: lin.iter().map(QVector::primitive).collect(),
    }
}

/// Vertex/ray enumeration of a canonical constraint form.
///
/// The affine hull is parametrized as `x = x_p + N t`; the set in `t`
/// coordinates is homogenized with a trailing coordinate `s >= 0` and the
/// resulting cone is enumerated. Rays with `s > 0` are vertices, rays with
/// `s = 0` are recession rays.
pub fn constraint_to_generator(c: &ConstraintForm) -> GeneratorForm {
    let dim = c.dim;
    if c.is_empty_sentinel() {
        return GeneratorForm::empty(dim);
    }
    let Some(base) = solve_affine(&c.eq_lhs(), &c.eq_rhs()) else {
        return GeneratorForm::empty(dim);
    };
    let basis = nullspace_basis(&c.eq_lhs());
    let k = basis.len();
    let lift = |t: &[Rational]| -> QVector {
        t.iter()
            .zip(&basis)
            .filter(|(c, _)| !c.is_zero())
            .fold(QVector::zeros(dim), |x, (c, b)| x.add_scaled(c, b))
    };
    let mut normals: Vec<QVector> = c
        .inequalities
        .iter()
        .map(|r| {
            let reduced: QVector = basis.iter().map(|b| r.coeffs.dot(b)).collect();
            reduced.extended(-(&r.rhs - r.coeffs.dot(&base)))
        })
        .collect();
    let mut homogenizer = QVector::zeros(k + 1);
    homogenizer = homogenizer.add_scaled(&-Rational::one(), &QVector::unit(k + 1, k));
    normals.push(homogenizer);
    let cone = cone_generators(k + 1, &normals);

    let mut g = GeneratorForm::new(dim);
    for r in &cone.rays {
        let s = &r[k];
        if s.is_positive() {
            let t: Vec<Rational> = r[..k].iter().map(|e| e / s).collect();
            g.points.push(&base + &lift(&t));
        } else {
            g.rays.push(lift(&r[..k]));
        }
    }
    for l in &cone.lineality {
        debug_assert!(l[k].is_zero());
        g.lineality.push(lift(&l[..k]));
    }
    tidy_generators(&g)
}

/// Facet enumeration: the same cone machinery applied to the cone of valid
/// inequalities `(a, c)` with `a·x + c <= 0` on the set.
pub fn generator_to_constraint(g: &GeneratorForm) -> ConstraintForm {
    let dim = g.dim;
    if g.is_empty() {
        return ConstraintForm::empty(dim);
    }
    // (a, c) must vanish on every (w, 0) for lineality w
    let lin_rows = QMatrix::from_rows(
        dim + 1,
        g.lineality
            .iter()
            .map(|w| w.extended(Rational::zero()))
            .collect(),
    );
    let basis = nullspace_basis(&lin_rows);
    let k = basis.len();
    let through_basis = |v: &QVector| -> QVector { basis.iter().map(|b| v.dot(b)).collect() };
    let mut normals = Vec::with_capacity(g.points.len() + g.rays.len());
    for u in &g.points {
        normals.push(through_basis(&u.extended(Rational::one())));
    }
    for v in &g.rays {
        normals.push(through_basis(&v.extended(Rational::zero())));
    }
    let cone = cone_generators(k, &normals);
    let lift = |z: &QVector| -> QVector {
        z.iter()
            .zip(&basis)
            .filter(|(c, _)| !c.is_zero())
            .fold(QVector::zeros(dim + 1), |y, (c, b)| y.add_scaled(c, b))
    };
    let mut c = ConstraintForm::new(dim);
    for z in &cone.lineality {
        let y = lift(z);
        c.equalities.push(Row::new(y.truncated(), -y[dim].clone()));
    }
    for z in &cone.rays {
        let y = lift(z);
        let row = Row::new(y.truncated(), -y[dim].clone());
        if !row.is_trivial() {
            c.inequalities.push(row);
        }
    }
    tidy_constraints(&c)
}

/// A polyhedral convex set carrying one or both canonical descriptions. The
/// missing description is computed on first use and memoized.
#[derive(Clone)]
pub struct Polyhedron {
    dim: usize,
    constraint: OnceLock<ConstraintForm>,
    generator: OnceLock<GeneratorForm>,
}

impl Polyhedron {
    pub fn from_constraints(c: &ConstraintForm) -> Self {
        Polyhedron {
            dim: c.dim,
            constraint: OnceLock::from(canonicalize_constraints(c)),
            generator: OnceLock::new(),
        }
    }

    /// Canonicalizes by a round trip through the constraint form, which
    /// removes redundant generators and detects implicit lines.
    pub fn from_generators(g: &GeneratorForm) -> Self {
        let c = generator_to_constraint(g);
        let canonical = constraint_to_generator(&c);
        Polyhedron {
            dim: g.dim,
            constraint: OnceLock::from(c),
            generator: OnceLock::from(canonical),
        }
    }

    pub fn universe(dim: usize) -> Self {
        Self::from_constraints(&ConstraintForm::universe(dim))
    }

    pub fn empty(dim: usize) -> Self {
        Polyhedron {
            dim,
            constraint: OnceLock::from(ConstraintForm::empty(dim)),
            generator: OnceLock::from(GeneratorForm::empty(dim)),
        }
    }

    pub fn point(p: QVector) -> Self {
        let dim = p.dim();
        Self::from_generators(&GeneratorForm::new(dim).with_point(p))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &ConstraintForm {
        self.constraint.get_or_init(|| {
            generator_to_constraint(self.generator.get().expect("one form is always present"))
        })
    }

    pub fn generators(&self) -> &GeneratorForm {
        self.generator.get_or_init(|| {
            constraint_to_generator(self.constraint.get().expect("one form is always present"))
        })
    }

    pub fn is_empty(&self) -> bool {
        self.constraints().is_empty_sentinel()
    }

    /// Dimension of the affine hull; `None` for the empty set.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.dim - self.constraints().equalities.len())
        }
    }
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constraints())
    }
}
