//! Double description for cones `{y : a_i · y <= 0}`.
//!
//! The cone starts as the whole space (every coordinate direction is a
//! lineality generator) and is cut by one half-space at a time. While the
//! current lineality space is not orthogonal to the new normal, one lineality
//! vector is spent to absorb the cut. Otherwise the classical step runs:
//! rays on the feasible side are kept, and every adjacent pair straddling the
//! hyperplane contributes the combination lying on it. Adjacency is decided
//! combinatorially from the sets of tight constraints.

use num_traits::{Signed, Zero};

use crate::rational::{QVector, Rational};

/// Extreme rays (modulo the lineality space) and a lineality basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<QVector>,
    pub lineality: Vec<QVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: QVector,
    tight: BitSet,
}

pub fn cone_generators(dim: usize, normals: &[QVector]) -> ConeGenerators {
    let m = normals.len();
    let mut lineality: Vec<QVector> = (0..dim).map(|i| QVector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed = BitSet::new(m);

    for (idx, a) in normals.iter().enumerate() {
        if a.is_zero() {
            for r in &mut rays {
                r.tight.insert(idx);
            }
            processed.insert(idx);
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut s0 = a.dot(&l0);
            if s0.is_positive() {
                l0 = -&l0;
                s0 = -s0;
            }
            for l in &mut lineality {
                let s = a.dot(l);
                if !s.is_zero() {
                    *l = l.add_scaled(&(-(&s / &s0)), &l0).primitive();
                }
            }
            for r in &mut rays {
                let s = a.dot(&r.v);
                if !s.is_zero() {
                    r.v = r.v.add_scaled(&(-(&s / &s0)), &l0).primitive();
                }
                r.tight.insert(idx);
            }
            rays.push(Ray {
                v: l0.primitive(),
                tight: processed.clone(),
            });
            processed.insert(idx);
            continue;
        }

        let values: Vec<Rational> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        // A pair spanning a 2-face of the pointed part shares at least
        // (pointed dimension - 2) tight constraints.
        let pointed_dim = dim - lineality.len();
        let min_common = pointed_dim.saturating_sub(2);
        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].tight.intersection(&rays[n].tight);
                if common.len() < min_common {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !r.tight.is_superset(&common));
                if !adjacent {
                    continue;
                }
                let v = rays[n]
                    .v
                    .scale(&values[p])
                    .add_scaled(&(-&values[n]), &rays[p].v)
                    .primitive();
                let mut tight = common;
                tight.insert(idx);
                created.push(Ray { v, tight });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_positive() {
                continue;
            }
            if values[i].is_zero() {
                r.tight.insert(idx);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
        processed.insert(idx);
    }

    ConeGenerators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}
