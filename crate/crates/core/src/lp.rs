//! Exact primal simplex with Bland's rule.
//!
//! Equations are eliminated before the tableau is built: the feasible affine
//! subspace is parametrized as `x = x_p + N t` with `N` a nullspace basis, and
//! the remaining inequalities are solved over the free parameters `t`. Free
//! parameters are split as `t = t+ - t-`. Phase one drives artificial
//! variables to zero; a positive phase-one optimum certifies infeasibility.

use num_traits::{One, Signed, Zero};

use crate::forms::{ConstraintForm, Row};
use crate::linalg::{nullspace_basis, solve_affine};
use crate::rational::{QVector, Rational};

/// Maximize `objective · x` over `constraints`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: QVector,
    pub constraints: ConstraintForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    /// `ray` is a recession direction of the feasible set along which the
    /// objective strictly increases.
    Unbounded {
        ray: QVector,
    },
    Optimal {
        point: QVector,
        value: Rational,
    },
}

impl LpResult {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpResult::Optimal { .. })
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Solves the program and, among optimal points, returns the one that is
/// lexicographically smallest in the coordinates along which the optimal
/// set is bounded below (coordinates unbounded below are skipped in order).
pub fn solve(lp: &LinearProgram) -> LpResult {
    let first = maximize(&lp.objective, &lp.constraints);
    let LpResult::Optimal { mut point, value } = first else {
        return first;
    };
    let dim = lp.constraints.dim;
    let mut face = lp.constraints.clone();
    face.equalities
        .push(Row::new(lp.objective.clone(), value.clone()));
    for i in 0..dim {
        let unit = QVector::unit(dim, i);
        if let LpResult::Optimal { point: p, value: v } = maximize(&-&unit, &face) {
            face.equalities.push(Row::new(unit, -v));
            point = p;
        }
    }
    LpResult::Optimal { point, value }
}

/// True iff `sup c·x` over `p` is finite or `p` is empty.
pub fn is_bounded_above(c: &QVector, p: &ConstraintForm) -> bool {
    !matches!(maximize(c, p), LpResult::Unbounded { .. })
}

/// Some feasible point, or `None` when the system is infeasible.
pub fn feasible_point(p: &ConstraintForm) -> Option<QVector> {
    match maximize(&QVector::zeros(p.dim), p) {
        LpResult::Optimal { point, .. } => Some(point),
        _ => None,
    }
}

/// Plain simplex result without the lexicographic refinement of [`solve`].
pub fn maximize(objective: &QVector, p: &ConstraintForm) -> LpResult {
    assert_eq!(objective.dim(), p.dim, "objective dimension");
    let Some(base) = solve_affine(&p.eq_lhs(), &p.eq_rhs()) else {
        return LpResult::Infeasible;
    };
    let basis = nullspace_basis(&p.eq_lhs());
    let k = basis.len();
    let lift = |t: &[Rational]| -> QVector {
        let mut x = QVector::zeros(p.dim);
        for (coef, b) in t.iter().zip(&basis) {
            if !coef.is_zero() {
                x = x.add_scaled(coef, b);
            }
        }
        x
    };
    // Rows over t: (g·N) t <= h - g·x_p
    let rows: Vec<(Vec<Rational>, Rational)> = p
        .inequalities
        .iter()
        .map(|r| {
            let coeffs = basis.iter().map(|b| r.coeffs.dot(b)).collect();
            (coeffs, &r.rhs - r.coeffs.dot(&base))
        })
        .collect();
    let reduced_obj: Vec<Rational> = basis.iter().map(|b| objective.dot(b)).collect();
    match simplex(k, &rows, &reduced_obj) {
        Outcome::Infeasible => LpResult::Infeasible,
        Outcome::Unbounded(t) => LpResult::Unbounded { ray: lift(&t) },
        Outcome::Optimal(t) => {
            let point = &base + &lift(&t);
            let value = objective.dot(&point);
            LpResult::Optimal { point, value }
        }
    }
}

enum Outcome {
    Infeasible,
    Unbounded(Vec<Rational>),
    Optimal(Vec<Rational>),
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs of a maximization; the last entry is minus the value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    allowed: Vec<bool>,
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for e in self.rows[r].iter_mut() {
            *e *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let factor = row[c].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e -= &factor * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = c;
    }

    /// Installs costs `c` and prices out the current basis.
    fn set_objective(&mut self, c: &[Rational]) {
        let mut cost: Vec<Rational> = c.to_vec();
        cost.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost[b].clone();
            if cb.is_zero() {
                continue;
            }
            for (e, a) in cost.iter_mut().zip(row) {
                *e -= &cb * a;
            }
        }
        self.cost = cost;
    }

    /// Bland's rule iterations. Returns the entering column of an unbounded
    /// direction, if any.
    fn run(&mut self) -> Option<usize> {
        loop {
            let entering =
                (0..self.ncols()).find(|&j| self.allowed[j] && self.cost[j].is_positive());
            // no improving column: optimal
            let c = entering?;
            let last = self.ncols();
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[last] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Some(c),
            }
        }
    }

    fn values(&self) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.ncols()];
        let last = self.ncols();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            z[b] = row[last].clone();
        }
        z
    }
}

/// Maximize `obj · t` subject to `a_i · t <= b_i`, `t` free in `R^k`.
fn simplex(k: usize, rows: &[(Vec<Rational>, Rational)], obj: &[Rational]) -> Outcome {
    let m = rows.len();
    let n_art = rows.iter().filter(|(_, b)| b.is_negative()).count();
    // columns: t+ (k), t- (k), slacks (m), artificials (n_art), rhs
    let slack0 = 2 * k;
    let art0 = slack0 + m;
    let ncols = art0 + n_art;
    let mut tab_rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = art0;
    for (i, (a, b)) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); ncols + 1];
        let sign = if b.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        for j in 0..k {
            row[j] = &a[j] * &sign;
            row[k + j] = -&a[j] * &sign;
        }
        row[slack0 + i] = sign.clone();
        row[ncols] = b * &sign;
        if b.is_negative() {
            row[next_art] = Rational::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(slack0 + i);
        }
        tab_rows.push(row);
    }
    let mut tab = Tableau {
        rows: tab_rows,
        cost: vec![Rational::zero(); ncols + 1],
        basis,
        allowed: vec![true; ncols],
    };

    if n_art > 0 {
        let mut c = vec![Rational::zero(); ncols];
        for e in &mut c[art0..] {
            *e = -Rational::one();
        }
        tab.set_objective(&c);
        let unbounded = tab.run();
        debug_assert!(unbounded.is_none(), "phase one is bounded");
        // cost[last] holds minus the phase-one value.
        if tab.cost[ncols].is_positive() {
            return Outcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis.
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= art0 {
                match (0..art0).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        for a in &mut tab.allowed[art0..] {
            *a = false;
        }
    }

    let mut c = vec![Rational::zero(); ncols];
    for j in 0..k {
        c[j] = obj[j].clone();
        c[k + j] = -obj[j].clone();
    }
    tab.set_objective(&c);
    let z_to_t = |z: &[Rational]| -> Vec<Rational> { (0..k).map(|j| &z[j] - &z[k + j]).collect() };
    match tab.run() {
        Some(entering) => {
            let mut dir = vec![Rational::zero(); ncols];
            dir[entering] = Rational::one();
            for (row, &b) in tab.rows.iter().zip(&tab.basis) {
                dir[b] = -row[entering].clone();
            }
            Outcome::Unbounded(z_to_t(&dir))
        }
        None => Outcome::Optimal(z_to_t(&tab.values())),
    }
}
