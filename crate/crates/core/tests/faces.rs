use polycalc::faces::{
    active_set, enumerate_faces, exposing_functional, face_from_index_set, relative_interior_point,
};
use polycalc::lp::{maximize, LpResult};
use polycalc::oracle::brute_force_faces;
use polycalc::random::{self, seeded};
use polycalc::{int, ActiveSet, ConstraintForm, Error, Face, Polyhedron, QVector};
use proptest::prelude::*;
use rand::Rng;

fn square() -> Polyhedron {
    Polyhedron::from_constraints(&ConstraintForm::from_i64s(
        2,
        &[],
        &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0)],
    ))
}

/// Points whose active sets intersect to the active set of the whole face:
/// vertices, and a vertex pushed along each ray and both ways along each line.
fn probe_points(f: &Polyhedron) -> Vec<QVector> {
    let g = f.generators();
    let base = g.points[0].clone();
    let mut out = g.points.clone();
    out.extend(g.rays.iter().map(|r| &base + r));
    out.extend(g.lineality.iter().map(|l| &base + l));
    out.extend(g.lineality.iter().map(|l| &base - l));
    out
}

fn min_value(c: &QVector, p: &Polyhedron) -> Option<polycalc::Rational> {
    match maximize(&-c, p.constraints()) {
        LpResult::Optimal { value, .. } => Some(-value),
        _ => None,
    }
}

#[test]
fn unit_square_lattice() {
    let faces = enumerate_faces(&square()).unwrap();
    assert_eq!(faces.len(), 9);
    let by_dim = |d| faces.iter().filter(|f: &&Face| f.dim() == d).count();
    assert_eq!((by_dim(0), by_dim(1), by_dim(2)), (4, 4, 1));
    assert!(faces[8].canonical_j.is_empty());
}

#[test]
fn quadrant_and_line() {
    let quadrant = Polyhedron::from_constraints(&ConstraintForm::from_i64s(
        2,
        &[],
        &[(&[-1, 0], 0), (&[0, -1], 0)],
    ));
    assert_eq!(enumerate_faces(&quadrant).unwrap().len(), 4);
    let line = Polyhedron::from_constraints(&ConstraintForm::from_i64s(2, &[(&[0, 1], 0)], &[]));
    let faces = enumerate_faces(&line).unwrap();
    assert_eq!(faces.len(), 1);
    assert_eq!(faces[0].dim(), 1);
    assert_eq!(
        enumerate_faces(&Polyhedron::empty(2)).unwrap_err(),
        Error::EmptySet
    );
}

#[test]
fn index_sets_out_of_range_are_rejected() {
    let err = face_from_index_set(&square(), &ActiveSet::new(vec![7])).unwrap_err();
    assert!(matches!(err, Error::InvalidIndex(_)));
    let sq = square();
    let row = |a: &[i64]| {
        let a = QVector::from_i64s(a);
        sq.constraints()
            .inequalities
            .iter()
            .position(|r| r.coeffs == a)
            .unwrap()
    };
    let corner =
        face_from_index_set(&sq, &ActiveSet::new(vec![row(&[1, 0]), row(&[0, 1])])).unwrap();
    assert!(corner
        .set_equal(&Polyhedron::point(QVector::from_i64s(&[1, 1])))
        .unwrap());
    let opposite =
        face_from_index_set(&sq, &ActiveSet::new(vec![row(&[1, 0]), row(&[-1, 0])])).unwrap();
    assert!(opposite.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn faces_match_brute_force(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let p = random::polyhedron(&mut rng, dim, 5, 1);
        let faces = enumerate_faces(&p).unwrap();
        let oracle = brute_force_faces(&p);
        prop_assert_eq!(faces.len(), oracle.len());
        for o in &oracle {
            prop_assert_eq!(faces.iter().filter(|f| f.body.set_equal(o).unwrap()).count(), 1);
        }
    }

    /// The canonical index set is exactly the set of inequalities tight on
    /// the whole face, and a relative interior point is tight on nothing more.
    #[test]
    fn canonical_sets_are_tight_on_the_face(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let p = random::polyhedron(&mut rng, dim, 5, 1);
        for face in enumerate_faces(&p).unwrap() {
            let ri = relative_interior_point(&face.body).unwrap();
            prop_assert_eq!(&active_set(&p, &ri).unwrap(), &face.canonical_j);
            let mut common: Option<Vec<usize>> = None;
            for u in probe_points(&face.body) {
                let i = active_set(&p, &u).unwrap();
                common = Some(match common {
                    None => i.indices().to_vec(),
                    Some(c) => c.into_iter().filter(|k| i.contains(*k)).collect(),
                });
            }
            prop_assert_eq!(common.unwrap(), face.canonical_j.indices().to_vec());
            let rebuilt = face_from_index_set(&p, &face.canonical_j).unwrap();
            prop_assert!(rebuilt.set_equal(&face.body).unwrap());
        }
    }

    /// Faces of a face are faces of the original set.
    #[test]
    fn face_relation_is_transitive(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let p = random::polytope(&mut rng, dim, 3);
        let faces = enumerate_faces(&p).unwrap();
        let f = &faces[rng.gen_range(0..faces.len())];
        for sub in enumerate_faces(&f.body).unwrap() {
            prop_assert!(faces.iter().any(|g| g.body.set_equal(&sub.body).unwrap()));
        }
    }

    /// Every index set cuts out a face whose canonical set contains it.
    #[test]
    fn index_sets_cut_out_faces(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let p = random::polytope(&mut rng, dim, 3);
        let m = p.constraints().inequalities.len();
        let j = ActiveSet::new((0..m).filter(|_| rng.gen_bool(0.4)).collect());
        let body = face_from_index_set(&p, &j).unwrap();
        if !body.is_empty() {
            let canonical = active_set(&p, &relative_interior_point(&body).unwrap()).unwrap();
            prop_assert!(j.is_subset_of(&canonical));
            let faces = enumerate_faces(&p).unwrap();
            prop_assert!(faces.iter().any(|f| f.canonical_j == canonical && f.body.set_equal(&body).unwrap()));
        }
    }

    /// The exposing functional is minimized exactly on its face: vertices off
    /// the face score strictly worse, and rays off the recession cone of the
    /// face strictly increase it.
    #[test]
    fn exposing_functionals_separate_the_face(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let p = random::polyhedron(&mut rng, dim, 5, 1);
        for face in enumerate_faces(&p).unwrap() {
            let c = exposing_functional(&p, &face);
            let best = min_value(&c, &p).expect("bounded below on a face");
            let on_face = c.dot(&face.body.generators().points[0]);
            prop_assert_eq!(&best, &on_face);
            let g = p.generators();
            for v in &g.points {
                let inside = face.body.contains(v).unwrap();
                prop_assert_eq!(inside, c.dot(v) == best);
            }
            let rec = face.body.recession_cone().unwrap();
            for r in &g.rays {
                prop_assert!(c.dot(r) >= int(0));
                prop_assert_eq!(rec.contains(r).unwrap(), c.dot(r) == int(0));
            }
            for l in &g.lineality {
                prop_assert_eq!(c.dot(l), int(0));
            }
        }
    }
}
