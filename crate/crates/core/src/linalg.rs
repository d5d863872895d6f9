//! Row reduction and the subspaces derived from it.

use num_traits::{One, Zero};

use crate::rational::{QMatrix, QVector, Rational};

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; rows past `rank` are zero.
    pub matrix: QMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

pub fn rref(m: &QMatrix) -> Rref {
    let ncols = m.ncols();
    let mut rows: Vec<Vec<Rational>> = m.rows().iter().map(|r| r.to_vec()).collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Rational::one() / &rows[rank][col];
        for e in rows[rank].iter_mut() {
            *e *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e -= &factor * p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    Rref {
        matrix: QMatrix::from_rows(ncols, rows.into_iter().map(QVector::new).collect()),
        rank,
        pivot_cols,
    }
}

/// Basis of `{x : Mx = 0}`, one vector per non-pivot column.
pub fn nullspace_basis(m: &QMatrix) -> Vec<QVector> {
    let r = rref(m);
    let n = m.ncols();
    (0..n)
        .filter(|c| !r.pivot_cols.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (i, &p) in r.pivot_cols.iter().enumerate() {
                v[p] = -r.matrix.row(i)[free].clone();
            }
            QVector::new(v)
        })
        .collect()
}

/// Nonzero rows of the reduced echelon form.
pub fn rowspace_basis(m: &QMatrix) -> Vec<QVector> {
    let r = rref(m);
    r.matrix.into_rows().into_iter().take(r.rank).collect()
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).rank
}

/// Some `x` with `Mx = y` (free coordinates set to zero), or `None` when the
/// system is inconsistent.
pub fn solve_affine(m: &QMatrix, y: &QVector) -> Option<QVector> {
    assert_eq!(m.nrows(), y.dim());
    let n = m.ncols();
    let augmented = QMatrix::from_rows(
        n + 1,
        m.rows()
            .iter()
            .zip(y.iter())
            .map(|(r, b)| r.extended(b.clone()))
            .collect(),
    );
    let r = rref(&augmented);
    if r.pivot_cols.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &p) in r.pivot_cols.iter().enumerate() {
        x[p] = r.matrix.row(i)[n].clone();
    }
    Some(QVector::new(x))
}

/// Maximal linearly independent subset of `vectors`, in input order.
pub fn independent_subset(dim: usize, vectors: &[QVector]) -> Vec<QVector> {
    let mut kept: Vec<QVector> = Vec::new();
    for v in vectors {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if rank(&QMatrix::from_rows(dim, trial)) == kept.len() + 1 {
            kept.push(v.clone());
        }
    }
    kept
}
