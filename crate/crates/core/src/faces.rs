//! Faces of a polyhedron.
//!
//! Every index set `J` of canonical inequalities defines
//! `F_J = {x ∈ P : a_j · x = b_j for j ∈ J}`, and every nonempty face arises
//! this way. A face is identified by its largest defining set, the indices
//! active on all of it, which equals the active set at any relative-interior
//! point. Each nonempty face is exposed by the averaged functional
//! `(1/|J|) Σ_{j∈J} (-a_j)`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::forms::Row;
use crate::polyhedron::Polyhedron;
use crate::rational::{QVector, Rational};

/// Sorted indices into the canonical inequalities of a polyhedron.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActiveSet(Vec<usize>);

impl ActiveSet {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        ActiveSet(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn with(&self, i: usize) -> ActiveSet {
        let mut v = self.0.clone();
        v.push(i);
        ActiveSet::new(v)
    }

    pub fn is_subset_of(&self, other: &ActiveSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }
}

impl fmt::Display for ActiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A nonempty face with its maximal defining index set.
#[derive(Clone, Debug)]
pub struct Face {
    pub canonical_j: ActiveSet,
    pub body: Polyhedron,
}

impl Face {
    /// Dimension of the affine hull of the face.
    pub fn dim(&self) -> usize {
        self.body.affine_dim().expect("faces are nonempty")
    }
}

pub fn active_set(p: &Polyhedron, x: &QVector) -> Result<ActiveSet> {
    Ok(ActiveSet::new(p.active_indices(x)?))
}

/// `F_J`, possibly empty.
pub fn face_from_index_set(p: &Polyhedron, j: &ActiveSet) -> Result<Polyhedron> {
    let c = p.constraints();
    if let Some(&bad) = j.indices().iter().find(|&&i| i >= c.inequalities.len()) {
        return Err(Error::InvalidIndex(format!(
            "index {bad} out of range for {} inequalities",
            c.inequalities.len()
        )));
    }
    let mut f = c.clone();
    for &i in j.indices() {
        f.equalities.push(c.inequalities[i].clone());
    }
    Ok(Polyhedron::from_constraints(&f))
}

/// Barycenter of the vertices plus the sum of the extreme rays. Every
/// inequality that is not an implicit equation is strict there.
pub fn relative_interior_point(p: &Polyhedron) -> Result<QVector> {
    p.generators().interior_combination().ok_or(Error::EmptySet)
}

/// All nonempty faces, each exactly once, ordered by dimension and then by
/// defining index set. Breadth-first from the whole set, adding one
/// inequality at a time.
pub fn enumerate_faces(p: &Polyhedron) -> Result<Vec<Face>> {
    if p.is_empty() {
        return Err(Error::EmptySet);
    }
    let c = p.constraints();
    let top_j = active_set(p, &relative_interior_point(p)?)?;
    let mut found: BTreeMap<ActiveSet, Polyhedron> = BTreeMap::new();
    let mut tried: HashSet<ActiveSet> = HashSet::new();
    let mut queue = VecDeque::new();
    found.insert(top_j.clone(), p.clone());
    queue.push_back(top_j);

    while let Some(j) = queue.pop_front() {
        let parent = found[&j].clone();
        for i in 0..c.inequalities.len() {
            if j.contains(i) {
                continue;
            }
            let candidate = j.with(i);
            if !tried.insert(candidate) {
                continue;
            }
            let mut cut = parent.constraints().clone();
            cut.equalities.push(c.inequalities[i].clone());
            let body = Polyhedron::from_constraints(&cut);
            if body.is_empty() {
                continue;
            }
            let canonical = active_set(p, &relative_interior_point(&body)?)?;
            if !found.contains_key(&canonical) {
                found.insert(canonical.clone(), body);
                queue.push_back(canonical);
            }
        }
    }

    let mut faces: Vec<Face> = found
        .into_iter()
        .map(|(canonical_j, body)| Face { canonical_j, body })
        .collect();
    faces.sort_by(|a, b| (a.dim(), &a.canonical_j).cmp(&(b.dim(), &b.canonical_j)));
    Ok(faces)
}

/// `x*_J = (1/|J|) Σ_{j∈J} (-a_j)`, and zero for the whole set. The face is
/// exactly the set of minimizers of `x*_J · x` over `p`.
pub fn exposing_functional(p: &Polyhedron, face: &Face) -> QVector {
    let rows: &[Row] = &p.constraints().inequalities;
    let j = face.canonical_j.indices();
    let mut sum = QVector::zeros(p.dim());
    for &i in j {
        sum = &sum - &rows[i].coeffs;
    }
    if j.is_empty() {
        return sum;
    }
    sum.scale(&(Rational::one() / Rational::from_integer(j.len().into())))
}
