//! Generalized polyhedral convex functions: the maximum of finitely many
//! affine pieces on a polyhedral domain, plus infinity elsewhere.
//!
//! A function is stored as its domain and piece list. Every operation that
//! builds a new function returns it canonicalized through its epigraph, so
//! duplicate and dominated pieces never survive.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::error::{check_dim, EpigraphDefect, Error, Result};
use crate::forms::{ConstraintForm, GeneratorForm, Row};
use crate::linalg::rowspace_basis;
use crate::oracle::lp_conjugate_value;
use crate::polyhedron::Polyhedron;
use crate::rational::{int, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtendedValue {
    Finite(Rational),
    PlusInfinity,
}

impl ExtendedValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            ExtendedValue::PlusInfinity => None,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(v) => write!(f, "{v}"),
            ExtendedValue::PlusInfinity => write!(f, "+inf"),
        }
    }
}

#[derive(Clone)]
pub struct GpcFunction {
    domain: Polyhedron,
    pieces: Vec<(QVector, Rational)>,
    epi: OnceLock<Polyhedron>,
}

/// A region of the domain on which the function is one affine piece.
#[derive(Clone, Debug)]
pub struct PwlCell {
    pub region: Polyhedron,
    pub slope: QVector,
    pub offset: Rational,
}

#[derive(Clone, Debug)]
pub struct PwlDecomposition {
    pub cells: Vec<PwlCell>,
}

impl GpcFunction {
    /// Stores the pieces as given. The domain must be nonempty and there must
    /// be at least one piece, otherwise the function would not be proper.
    pub fn new(domain: Polyhedron, pieces: Vec<(QVector, Rational)>) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::EmptySet);
        }
        if pieces.is_empty() {
            return Err(Error::NotAnEpigraph(EpigraphDefect::UnboundedBelow));
        }
        for (v, _) in &pieces {
            check_dim(domain.dim(), v.dim())?;
        }
        Ok(GpcFunction {
            domain,
            pieces,
            epi: OnceLock::new(),
        })
    }

    /// `max_k (v_k · x + β_k)` on the whole space.
    pub fn max_affine(dim: usize, pieces: Vec<(QVector, Rational)>) -> Result<Self> {
        Self::new(Polyhedron::universe(dim), pieces)
    }

    pub fn affine(slope: QVector, offset: Rational) -> Self {
        Self::max_affine(slope.dim(), vec![(slope, offset)]).expect("one piece on the whole space")
    }

    /// `|x|` on the line.
    pub fn abs() -> Self {
        Self::max_affine(
            1,
            vec![
                (QVector::from_i64s(&[1]), int(0)),
                (QVector::from_i64s(&[-1]), int(0)),
            ],
        )
        .expect("proper")
    }

    pub fn indicator(p: &Polyhedron) -> Result<Self> {
        Self::new(p.clone(), vec![(QVector::zeros(p.dim()), Rational::zero())])
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn domain(&self) -> &Polyhedron {
        &self.domain
    }

    pub fn pieces(&self) -> &[(QVector, Rational)] {
        &self.pieces
    }

    /// Same function with duplicate and dominated pieces removed and the
    /// domain in canonical form.
    pub fn canonical(&self) -> Self {
        Self::from_epigraph(self.epigraph()).expect("epigraph of a proper function")
    }

    pub fn evaluate(&self, x: &QVector) -> Result<ExtendedValue> {
        check_dim(self.dim(), x.dim())?;
        if !self.domain.contains(x)? {
            return Ok(ExtendedValue::PlusInfinity);
        }
        Ok(ExtendedValue::Finite(self.max_piece(x)))
    }

    fn max_piece(&self, x: &QVector) -> Rational {
        self.pieces
            .iter()
            .map(|(v, b)| v.dot(x) + b)
            .max()
            .expect("pieces are nonempty")
    }

    /// Indices of the pieces attaining the maximum at a domain point.
    pub fn active_pieces(&self, x: &QVector) -> Result<Vec<usize>> {
        let value = self.finite_value(x)?;
        Ok((0..self.pieces.len())
            .filter(|&k| self.pieces[k].0.dot(x) + &self.pieces[k].1 == value)
            .collect())
    }

    fn finite_value(&self, x: &QVector) -> Result<Rational> {
        match self.evaluate(x)? {
            ExtendedValue::Finite(v) => Ok(v),
            ExtendedValue::PlusInfinity => Err(Error::PointNotInDomain),
        }
    }

    /// `{(x, t) : x ∈ dom f, v_k · x - t <= -β_k}` in one more dimension.
    pub fn epigraph(&self) -> &Polyhedron {
        self.epi.get_or_init(|| {
            let mut c = self.domain.constraints().lifted();
            for (v, b) in &self.pieces {
                c.inequalities.push(Row::new(v.extended(int(-1)), -b));
            }
            Polyhedron::from_constraints(&c)
        })
    }

    /// Reads a function back from a set whose vertical sections are upward
    /// half-lines. A set that is not closed upward is replaced by its upward
    /// closure `P + cone{(0, 1)}`, which has the same lower boundary; this
    /// is what turns a graph such as `{t = 2x}` into a function.
    pub fn from_epigraph(p: &Polyhedron) -> Result<Self> {
        let n = p.dim().checked_sub(1).ok_or(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        })?;
        if p.is_empty() {
            return Err(Error::NotAnEpigraph(EpigraphDefect::Empty));
        }
        let up = QVector::unit(n + 1, n);
        let cone = p.constraints().homogenized();
        if cone.satisfied_by(&-&up) {
            return Err(Error::NotAnEpigraph(EpigraphDefect::UnboundedBelow));
        }
        let closed;
        let p = if cone.satisfied_by(&up) {
            p
        } else {
            let mut g = p.generators().clone();
            g.rays.push(up);
            closed = Polyhedron::from_generators(&g);
            &closed
        };

        let c = p.constraints();
        let mut domain = ConstraintForm::new(n);
        for r in &c.equalities {
            debug_assert!(r.coeffs[n].is_zero());
            domain
                .equalities
                .push(Row::new(r.coeffs.truncated(), r.rhs.clone()));
        }
        let mut pieces = Vec::new();
        for r in &c.inequalities {
            let a = &r.coeffs[n];
            if a.is_zero() {
                domain
                    .inequalities
                    .push(Row::new(r.coeffs.truncated(), r.rhs.clone()));
            } else {
                debug_assert!(a.is_negative());
                let s = a.abs();
                pieces.push((r.coeffs.truncated().scale(&s.recip()), -(&r.rhs / &s)));
            }
        }
        let f = Self::new(Polyhedron::from_constraints(&domain), pieces)?;
        let _ = f.epi.set(p.clone());
        Ok(f)
    }

    /// Equality as extended-valued functions on the whole space.
    pub fn pointwise_equal(&self, other: &GpcFunction) -> Result<bool> {
        self.epigraph().set_equal(other.epigraph())
    }

    /// One cell per piece: the part of the domain where that piece is the
    /// maximum. Empty cells are dropped.
    pub fn pwl_decompose(&self) -> PwlDecomposition {
        let mut cells = Vec::new();
        for (vk, bk) in &self.pieces {
            let mut c = self.domain.constraints().clone();
            for (vi, bi) in &self.pieces {
                c.inequalities.push(Row::new(vi - vk, bk - bi));
            }
            let region = Polyhedron::from_constraints(&c);
            if !region.is_empty() {
                cells.push(PwlCell {
                    region,
                    slope: vk.clone(),
                    offset: bk.clone(),
                });
            }
        }
        PwlDecomposition { cells }
    }

    pub fn add(&self, other: &GpcFunction) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        let domain = self.domain.intersect(&other.domain)?;
        if domain.is_empty() {
            return Err(Error::EmptyDomainIntersection);
        }
        let mut pieces = Vec::new();
        for (v, b) in &self.pieces {
            for (w, c) in &other.pieces {
                pieces.push((v + w, b + c));
            }
        }
        Ok(Self::new(domain, pieces)?.canonical())
    }

    /// `h ↦ f'(x; h)`: the active pieces made linear, on the tangent cone of
    /// the domain at `x`.
    pub fn directional_derivative(&self, x: &QVector) -> Result<Self> {
        let active = self.active_pieces(x)?;
        let domain = self.domain.tangent_cone(x)?;
        let pieces = active
            .iter()
            .map(|&k| (self.pieces[k].0.clone(), Rational::zero()))
            .collect();
        Ok(Self::new(domain, pieces)?.canonical())
    }

    /// `(f □ g)(x) = inf{f(x1) + g(x2) : x1 + x2 = x}`, read off the sum of
    /// the epigraphs. Fails when the result takes the value minus infinity.
    pub fn inf_convolution(&self, other: &GpcFunction) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        let sum = self.epigraph().minkowski_sum(other.epigraph())?;
        Self::from_epigraph(&sum)
    }

    /// `f*(x*) = sup_x (x* · x - f(x))`, built cell by cell. On a cell with
    /// points `u_i`, rays `r_j` and lines `w_l`, the supremum is finite iff
    /// `x* - v_k` annihilates every `w_l` and is nonpositive on every `r_j`,
    /// and then it is attained at a point.
    pub fn conjugate(&self) -> Self {
        let n = self.dim();
        let mut domain = ConstraintForm::new(n);
        let mut pieces = Vec::new();
        for cell in self.pwl_decompose().cells {
            let g: &GeneratorForm = cell.region.generators();
            for w in &g.lineality {
                domain
                    .equalities
                    .push(Row::new(w.clone(), cell.slope.dot(w)));
            }
            for r in &g.rays {
                domain
                    .inequalities
                    .push(Row::new(r.clone(), cell.slope.dot(r)));
            }
            for u in &g.points {
                pieces.push((u.clone(), -(cell.slope.dot(u) + &cell.offset)));
            }
        }
        Self::new(Polyhedron::from_constraints(&domain), pieces)
            .expect("the conjugate of a proper function is proper")
            .canonical()
    }

    /// `conv{v_j : j active} + cone{a_i : i active in dom f} + rowspace(A)`.
    pub fn subdifferential(&self, x: &QVector) -> Result<Polyhedron> {
        let active = self.active_pieces(x)?;
        let c = self.domain.constraints();
        let g = GeneratorForm {
            dim: self.dim(),
            points: active.iter().map(|&k| self.pieces[k].0.clone()).collect(),
            rays: c
                .active_indices(x)
                .into_iter()
                .map(|i| c.inequalities[i].coeffs.clone())
                .collect(),
            lineality: rowspace_basis(&c.eq_lhs()),
        };
        Ok(Polyhedron::from_generators(&g))
    }

    /// Whether `f(x) + f*(x*) = x* · x`, with `f*` computed by linear
    /// programming over the epigraph.
    pub fn fenchel_young_check(&self, x: &QVector, xstar: &QVector) -> Result<bool> {
        check_dim(self.dim(), xstar.dim())?;
        let fx = self.finite_value(x)?;
        Ok(match lp_conjugate_value(self, xstar)? {
            ExtendedValue::Finite(c) => fx + c == xstar.dot(x),
            ExtendedValue::PlusInfinity => false,
        })
    }
}

impl fmt::Debug for GpcFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `function dim=N`, the domain rows, then one `piece v.. beta` line each.
impl fmt::Display for GpcFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "function dim={}", self.dim())?;
        write!(f, "domain {}", self.domain.constraints())?;
        for (v, b) in &self.pieces {
            if v.dim() == 0 {
                writeln!(f, "piece {b}")?;
            } else {
                writeln!(f, "piece {v} {b}")?;
            }
        }
        Ok(())
    }
}
