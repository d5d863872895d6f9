//! Brute-force reference computations. They share only the rational kernel
//! and the simplex solver with the main constructions, so agreement between
//! the two is meaningful evidence.

use std::collections::BTreeMap;

use crate::error::{check_dim, Result};
use crate::forms::{ConstraintForm, Row};
use crate::functions::{ExtendedValue, GpcFunction};
use crate::linalg::{rank, solve_affine};
use crate::lp::{maximize, LpResult};
use crate::polyhedron::Polyhedron;
use crate::rational::{int, QMatrix, QVector, Rational};

/// Every nonempty `F_J` over all subsets `J` of the canonical inequalities,
/// deduplicated by canonical form and sorted by dimension. Emptiness is
/// inherited by supersets, so a depth-first walk can stop at the first
/// empty set on each branch.
pub fn brute_force_faces(p: &Polyhedron) -> Vec<Polyhedron> {
    let mut found: BTreeMap<(usize, ConstraintForm), Polyhedron> = BTreeMap::new();
    if p.is_empty() {
        return Vec::new();
    }
    let rows = p.constraints().inequalities.clone();
    let mut stack: Vec<(usize, ConstraintForm)> = vec![(0, p.constraints().clone())];
    while let Some((next, c)) = stack.pop() {
        let face = Polyhedron::from_constraints(&c);
        if face.is_empty() {
            continue;
        }
        let key = (face.affine_dim().unwrap_or(0), face.constraints().clone());
        found.entry(key).or_insert_with(|| face.clone());
        for (i, row) in rows.iter().enumerate().skip(next) {
            let mut child = face.constraints().clone();
            child.equalities.push(row.clone());
            stack.push((i + 1, child));
        }
    }
    found.into_values().collect()
}

/// Vertices found by solving every square subsystem of the constraints and
/// keeping the feasible solutions. Only meaningful for pointed sets.
pub fn vertices_by_subsystems(c: &ConstraintForm) -> Vec<QVector> {
    let d = c.dim;
    let rows: Vec<&Row> = c.equalities.iter().chain(&c.inequalities).collect();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(d);
    subsets(rows.len(), d, 0, &mut pick, &mut |idx| {
        let m = QMatrix::from_rows(d, idx.iter().map(|&i| rows[i].coeffs.clone()).collect());
        if rank(&m) < d {
            return;
        }
        let y: QVector = idx.iter().map(|&i| rows[i].rhs.clone()).collect();
        if let Some(x) = solve_affine(&m, &y) {
            if c.satisfied_by(&x) {
                out.push(x);
            }
        }
    });
    out.sort();
    out.dedup();
    out
}

fn subsets(n: usize, k: usize, start: usize, pick: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for i in start..n {
        if n - i < k - pick.len() {
            break;
        }
        pick.push(i);
        subsets(n, k, i + 1, pick, f);
        pick.pop();
    }
}

/// `f*(x*) = sup{x* · x - t : (x, t) ∈ epi f}` by the simplex method.
pub fn lp_conjugate_value(f: &GpcFunction, xstar: &QVector) -> Result<ExtendedValue> {
    check_dim(f.dim(), xstar.dim())?;
    let objective = xstar.extended(int(-1));
    Ok(match maximize(&objective, f.epigraph().constraints()) {
        LpResult::Optimal { value, .. } => ExtendedValue::Finite(value),
        LpResult::Unbounded { .. } => ExtendedValue::PlusInfinity,
        LpResult::Infeasible => unreachable!("epigraphs of proper functions are nonempty"),
    })
}

/// Halvings tried before a direction leaving the domain is declared
/// infeasible.
const MAX_HALVINGS: usize = 256;

/// `f'(x; h)` as the limit of `(f(x + t h) - f(x)) / t`, halving `t` from 1
/// until two consecutive quotients agree. For convex `g(s) = f(x + s h)` with
/// `g(0) = 0`, equal quotients at `t/2` and `t` force `g` to be linear on
/// `[0, t]`, so the common value is exact.
pub fn difference_quotient_derivative(
    f: &GpcFunction,
    x: &QVector,
    h: &QVector,
) -> Result<ExtendedValue> {
    check_dim(f.dim(), h.dim())?;
    let fx = match f.evaluate(x)? {
        ExtendedValue::Finite(v) => v,
        ExtendedValue::PlusInfinity => return Err(crate::Error::PointNotInDomain),
    };
    let half = Rational::new(1.into(), 2.into());
    let mut t = int(1);
    let mut previous: Option<Rational> = None;
    for _ in 0..MAX_HALVINGS {
        let y = x.add_scaled(&t, h);
        match f.evaluate(&y)? {
            ExtendedValue::Finite(fy) => {
                let q = (fy - &fx) / &t;
                if previous.as_ref() == Some(&q) {
                    return Ok(ExtendedValue::Finite(q));
                }
                previous = Some(q);
            }
            ExtendedValue::PlusInfinity => previous = None,
        }
        t = &t * &half;
    }
    Ok(ExtendedValue::PlusInfinity)
}
