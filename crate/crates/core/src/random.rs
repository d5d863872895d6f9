//! Seeded generators of small random instances for tests and benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::forms::{ConstraintForm, GeneratorForm, Row};
use crate::functions::GpcFunction;
use crate::polyhedron::Polyhedron;
use crate::rational::{int, QVector, Rational};

/// Reproducible across platforms and releases of `rand`.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

/// Numerator in `[-bound, bound]` over a denominator from 1 to 3.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(
        rng.gen_range(-bound..=bound).into(),
        rng.gen_range(1..=3i64).into(),
    )
}

pub fn int_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> QVector {
    (0..dim).map(|_| small_int(rng, bound)).collect()
}

pub fn rational_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> QVector {
    (0..dim).map(|_| small_rational(rng, bound)).collect()
}

fn nonzero_int_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> QVector {
    loop {
        let v = int_vector(rng, dim, bound);
        if !v.is_zero() || dim == 0 {
            return v;
        }
    }
}

/// Arbitrary integer system; it may be empty, unbounded or degenerate.
pub fn constraints<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_ineqs: usize,
    max_eqs: usize,
) -> ConstraintForm {
    let mut c = ConstraintForm::new(dim);
    for _ in 0..rng.gen_range(0..=max_eqs) {
        c.equalities
            .push(Row::new(nonzero_int_vector(rng, dim, 3), small_int(rng, 3)));
    }
    for _ in 0..rng.gen_range(0..=max_ineqs) {
        c.inequalities
            .push(Row::new(nonzero_int_vector(rng, dim, 3), small_int(rng, 4)));
    }
    c
}

/// A system satisfied by a random integer anchor point, so never empty.
pub fn nonempty_constraints<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_ineqs: usize,
    max_eqs: usize,
) -> ConstraintForm {
    let anchor = int_vector(rng, dim, 2);
    constraints_through(rng, &anchor, max_ineqs, max_eqs)
}

/// A system satisfied by `anchor`, with some rows tight there.
pub fn constraints_through<R: Rng + ?Sized>(
    rng: &mut R,
    anchor: &QVector,
    max_ineqs: usize,
    max_eqs: usize,
) -> ConstraintForm {
    let dim = anchor.dim();
    let mut c = ConstraintForm::new(dim);
    for _ in 0..rng.gen_range(0..=max_eqs) {
        let a = nonzero_int_vector(rng, dim, 3);
        let b = a.dot(anchor);
        c.equalities.push(Row::new(a, b));
    }
    for _ in 0..rng.gen_range(0..=max_ineqs) {
        let a = nonzero_int_vector(rng, dim, 3);
        let b = a.dot(anchor) + int(rng.gen_range(0..=3));
        c.inequalities.push(Row::new(a, b));
    }
    c
}

pub fn polyhedron<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_ineqs: usize,
    max_eqs: usize,
) -> Polyhedron {
    Polyhedron::from_constraints(&nonempty_constraints(rng, dim, max_ineqs, max_eqs))
}

/// Bounded: a box of half-width 5 around the origin cut by random rows
/// through an anchor inside it.
pub fn polytope<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_cuts: usize) -> Polyhedron {
    let mut c = nonempty_constraints(rng, dim, max_cuts, 0);
    for i in 0..dim {
        c.inequalities.push(Row::new(QVector::unit(dim, i), int(5)));
        c.inequalities
            .push(Row::new(-&QVector::unit(dim, i), int(5)));
    }
    Polyhedron::from_constraints(&c)
}

pub fn generators<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_points: usize,
    max_rays: usize,
    max_lines: usize,
) -> GeneratorForm {
    let mut g = GeneratorForm::new(dim);
    for _ in 0..rng.gen_range(1..=max_points.max(1)) {
        g.points.push(int_vector(rng, dim, 3));
    }
    for _ in 0..rng.gen_range(0..=max_rays) {
        g.rays.push(nonzero_int_vector(rng, dim, 2));
    }
    for _ in 0..rng.gen_range(0..=max_lines) {
        g.lineality.push(nonzero_int_vector(rng, dim, 2));
    }
    g
}

/// A random member: a convex combination of the points plus nonnegative
/// multiples of the rays and arbitrary multiples of the lines.
pub fn point_in<R: Rng + ?Sized>(rng: &mut R, p: &Polyhedron) -> Option<QVector> {
    let g = p.generators();
    if g.is_empty() {
        return None;
    }
    let weights: Vec<i64> = loop {
        let w: Vec<i64> = (0..g.points.len()).map(|_| rng.gen_range(0..=3)).collect();
        if w.iter().any(|&x| x > 0) {
            break w;
        }
    };
    let total = int(weights.iter().sum());
    let mut x = QVector::zeros(p.dim());
    for (u, w) in g.points.iter().zip(&weights) {
        x = x.add_scaled(&(int(*w) / &total), u);
    }
    for r in &g.rays {
        x = x.add_scaled(&int(rng.gen_range(0..=2)), r);
    }
    for l in &g.lineality {
        x = x.add_scaled(&int(rng.gen_range(-2..=2)), l);
    }
    Some(x)
}

/// Between one and four integer pieces on a random nonempty domain.
pub fn function<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_domain_rows: usize) -> GpcFunction {
    let anchor = int_vector(rng, dim, 2);
    function_through(rng, &anchor, max_domain_rows)
}

/// Like [`function`], with `anchor` in the domain.
pub fn function_through<R: Rng + ?Sized>(
    rng: &mut R,
    anchor: &QVector,
    max_domain_rows: usize,
) -> GpcFunction {
    let dim = anchor.dim();
    let c = constraints_through(rng, anchor, max_domain_rows, usize::from(dim > 1));
    let pieces = (0..rng.gen_range(1..=4))
        .map(|_| (int_vector(rng, dim, 3), small_int(rng, 3)))
        .collect();
    GpcFunction::new(Polyhedron::from_constraints(&c), pieces).expect("nonempty domain and pieces")
}
