use polycalc::lp::{maximize, LpResult};
use polycalc::oracle::{difference_quotient_derivative, lp_conjugate_value};
use polycalc::random::{self, seeded};
use polycalc::{
    int, rat, ConstraintForm, EpigraphDefect, Error, ExtendedValue, GpcFunction, Polyhedron,
    QVector, Rational,
};
use proptest::prelude::*;
use rand::Rng;

fn q(xs: &[i64]) -> QVector {
    QVector::from_i64s(xs)
}

fn fin(v: Rational) -> ExtendedValue {
    ExtendedValue::Finite(v)
}

fn value(f: &GpcFunction, x: &QVector) -> ExtendedValue {
    f.evaluate(x).unwrap()
}

fn ext_add(a: &ExtendedValue, b: &ExtendedValue) -> ExtendedValue {
    match (a, b) {
        (ExtendedValue::Finite(x), ExtendedValue::Finite(y)) => fin(x + y),
        _ => ExtendedValue::PlusInfinity,
    }
}

fn interval(lo: i64, hi: i64) -> Polyhedron {
    Polyhedron::from_constraints(&ConstraintForm::from_i64s(
        1,
        &[],
        &[(&[1], hi), (&[-1], -lo)],
    ))
}

/// Candidate minimizers of `y ↦ f(y) + g(x - y)` on the line: every place
/// where either term can bend, plus the origin.
fn bend_points(f: &GpcFunction, g: &GpcFunction, x: &Rational) -> Vec<Rational> {
    fn bends(h: &GpcFunction) -> Vec<Rational> {
        let mut out = Vec::new();
        let c = h.domain().constraints();
        for r in c.inequalities.iter().chain(&c.equalities) {
            out.push(&r.rhs / &r.coeffs[0]);
        }
        for (i, (a, b)) in h.pieces().iter().enumerate() {
            for (c, d) in &h.pieces()[i + 1..] {
                if a[0] != c[0] {
                    out.push((d - b) / (&a[0] - &c[0]));
                }
            }
        }
        out
    }
    let mut out = bends(f);
    out.extend(bends(g).into_iter().map(|b| x - b));
    out.push(int(0));
    out
}

#[test]
fn abs_examples() {
    let abs = GpcFunction::abs();
    assert_eq!(value(&abs, &q(&[-3])), fin(int(3)));
    let conj = abs.conjugate();
    assert!(conj
        .pointwise_equal(&GpcFunction::indicator(&interval(-1, 1)).unwrap())
        .unwrap());
    assert!(conj.conjugate().pointwise_equal(&abs).unwrap());
    assert!(abs
        .subdifferential(&q(&[0]))
        .unwrap()
        .set_equal(&interval(-1, 1))
        .unwrap());
    assert!(abs
        .subdifferential(&q(&[2]))
        .unwrap()
        .set_equal(&Polyhedron::point(q(&[1])))
        .unwrap());
    assert!(abs
        .inf_convolution(&abs)
        .unwrap()
        .pointwise_equal(&abs)
        .unwrap());
    let d = abs.directional_derivative(&q(&[0])).unwrap();
    assert!(d.pointwise_equal(&abs).unwrap());
    let twice = abs.add(&abs).unwrap();
    assert_eq!(value(&twice, &q(&[-2])), fin(int(4)));
}

#[test]
fn graph_of_a_line_is_closed_upward() {
    let graph = Polyhedron::from_constraints(&ConstraintForm::from_i64s(2, &[(&[2, -1], 0)], &[]));
    let f = GpcFunction::from_epigraph(&graph).unwrap();
    assert!(f
        .pointwise_equal(&GpcFunction::affine(q(&[2]), int(0)))
        .unwrap());
    let down = Polyhedron::from_constraints(&ConstraintForm::from_i64s(2, &[], &[(&[0, 1], 0)]));
    assert_eq!(
        GpcFunction::from_epigraph(&down).unwrap_err(),
        Error::NotAnEpigraph(EpigraphDefect::UnboundedBelow)
    );
    assert_eq!(
        GpcFunction::from_epigraph(&Polyhedron::empty(2)).unwrap_err(),
        Error::NotAnEpigraph(EpigraphDefect::Empty)
    );
    let ident = GpcFunction::affine(q(&[1]), int(0));
    let double = GpcFunction::affine(q(&[2]), int(0));
    assert_eq!(
        ident.inf_convolution(&double).unwrap_err(),
        Error::NotAnEpigraph(EpigraphDefect::UnboundedBelow)
    );
}

#[test]
fn linear_functions_conjugate_to_point_indicators() {
    let f = GpcFunction::affine(q(&[2, -1]), int(3));
    let conj = f.conjugate();
    assert_eq!(value(&conj, &q(&[2, -1])), fin(int(-3)));
    assert_eq!(value(&conj, &q(&[2, 0])), ExtendedValue::PlusInfinity);
    for xs in [[2, -1], [0, 0], [1, 5]] {
        assert_eq!(
            lp_conjugate_value(&f, &q(&xs)).unwrap(),
            value(&conj, &q(&xs))
        );
    }
}

#[test]
fn indicator_calculus() {
    let square = Polyhedron::from_constraints(&ConstraintForm::from_i64s(
        2,
        &[],
        &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 0), (&[0, -1], 0)],
    ));
    let diamond = Polyhedron::from_constraints(&ConstraintForm::from_i64s(
        2,
        &[],
        &[(&[1, 1], 1), (&[1, -1], 1), (&[-1, 1], 1), (&[-1, -1], 1)],
    ));
    let (is, id) = (
        GpcFunction::indicator(&square).unwrap(),
        GpcFunction::indicator(&diamond).unwrap(),
    );
    let meet = GpcFunction::indicator(&square.intersect(&diamond).unwrap()).unwrap();
    assert!(is.add(&id).unwrap().pointwise_equal(&meet).unwrap());
    let sum = GpcFunction::indicator(&square.minkowski_sum(&diamond).unwrap()).unwrap();
    assert!(is
        .inf_convolution(&id)
        .unwrap()
        .pointwise_equal(&sum)
        .unwrap());
    let corner = q(&[0, 0]);
    assert!(is
        .subdifferential(&corner)
        .unwrap()
        .set_equal(&square.normal_cone(&corner).unwrap())
        .unwrap());
    // the conjugate of an indicator is the support function
    let support = is.conjugate();
    for xs in [[1, 1], [-1, 2], [3, -4], [0, 0]] {
        let c = q(&xs);
        let LpResult::Optimal { value: best, .. } = maximize(&c, square.constraints()) else {
            panic!()
        };
        assert_eq!(value(&support, &c), fin(best));
    }
}

#[test]
fn errors() {
    let abs = GpcFunction::abs();
    assert!(matches!(
        abs.evaluate(&q(&[1, 2])),
        Err(Error::DimensionMismatch { .. })
    ));
    let seg = GpcFunction::indicator(&interval(0, 1)).unwrap();
    assert_eq!(
        seg.subdifferential(&q(&[2])).unwrap_err(),
        Error::PointNotInDomain
    );
    assert_eq!(
        seg.directional_derivative(&q(&[-1])).unwrap_err(),
        Error::PointNotInDomain
    );
    let far = GpcFunction::indicator(&interval(5, 6)).unwrap();
    assert_eq!(seg.add(&far).unwrap_err(), Error::EmptyDomainIntersection);
    assert_eq!(
        GpcFunction::new(interval(0, 1), vec![]).unwrap_err(),
        Error::NotAnEpigraph(EpigraphDefect::UnboundedBelow)
    );
    assert_eq!(
        GpcFunction::new(Polyhedron::empty(1), vec![(q(&[0]), int(0))]).unwrap_err(),
        Error::EmptySet
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn epigraph_round_trip(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let f = random::function(&mut rng, dim, 4);
        let back = GpcFunction::from_epigraph(f.epigraph()).unwrap();
        prop_assert!(back.pointwise_equal(&f).unwrap());
        for _ in 0..20 {
            let x = random::rational_vector(&mut rng, dim, 4);
            prop_assert_eq!(value(&back, &x), value(&f, &x));
            prop_assert_eq!(value(&f.canonical(), &x), value(&f, &x));
            match value(&f, &x) {
                ExtendedValue::Finite(v) => {
                    prop_assert!(f.epigraph().contains(&x.extended(v.clone())).unwrap());
                    prop_assert!(!f.epigraph().contains(&x.extended(v - int(1))).unwrap());
                }
                ExtendedValue::PlusInfinity => {
                    prop_assert!(!f.epigraph().contains(&x.extended(int(1000))).unwrap());
                }
            }
        }
    }

    /// The cells cover the domain and carry the function's values.
    #[test]
    fn pwl_cells_cover_the_domain(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let f = random::function(&mut rng, dim, 4);
        let cells = f.pwl_decompose().cells;
        for _ in 0..30 {
            let x = random::point_in(&mut rng, f.domain()).unwrap();
            let ExtendedValue::Finite(fx) = value(&f, &x) else { unreachable!() };
            let hits: Vec<_> = cells.iter().filter(|c| c.region.contains(&x).unwrap()).collect();
            prop_assert!(!hits.is_empty());
            for c in hits {
                prop_assert_eq!(c.slope.dot(&x) + &c.offset, fx.clone());
            }
        }
        for c in &cells {
            prop_assert!(c.region.is_subset_of(f.domain()).unwrap());
        }
    }

    #[test]
    fn jensen_inequality(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let f = random::function(&mut rng, dim, 4);
        for _ in 0..20 {
            let x = random::point_in(&mut rng, f.domain()).unwrap();
            let y = random::point_in(&mut rng, f.domain()).unwrap();
            let l = rat(rng.gen_range(0..=6), 6);
            let z = &x.scale(&l) + &y.scale(&(int(1) - &l));
            let (ExtendedValue::Finite(fx), ExtendedValue::Finite(fy), ExtendedValue::Finite(fz)) =
                (value(&f, &x), value(&f, &y), value(&f, &z)) else { unreachable!() };
            prop_assert!(fz <= &l * fx + (int(1) - &l) * fy);
        }
    }

    #[test]
    fn sums_add_values(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let anchor = random::int_vector(&mut rng, dim, 2);
        let f = random::function_through(&mut rng, &anchor, 3);
        let g = random::function_through(&mut rng, &anchor, 3);
        let h = f.add(&g).unwrap();
        for _ in 0..20 {
            let x = random::rational_vector(&mut rng, dim, 4);
            prop_assert_eq!(value(&h, &x), ext_add(&value(&f, &x), &value(&g, &x)));
        }
    }

    #[test]
    fn conjugate_agrees_with_lp_and_is_an_involution(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=2);
        let f = random::function(&mut rng, dim, 4);
        let conj = f.conjugate();
        for _ in 0..10 {
            let y = random::int_vector(&mut rng, dim, 4);
            prop_assert_eq!(value(&conj, &y), lp_conjugate_value(&f, &y).unwrap());
        }
        prop_assert!(conj.conjugate().pointwise_equal(&f).unwrap());
    }

    /// `x* ∈ ∂f(x)` exactly when Fenchel-Young holds with equality.
    #[test]
    fn subgradients_are_fenchel_young_equalities(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=2);
        let f = random::function(&mut rng, dim, 3);
        let x = random::point_in(&mut rng, f.domain()).unwrap();
        let sub = f.subdifferential(&x).unwrap();
        let mut tries: Vec<QVector> = (0..10).map(|_| random::int_vector(&mut rng, dim, 4)).collect();
        tries.extend((0..5).map(|_| random::point_in(&mut rng, &sub).unwrap()));
        for y in tries {
            prop_assert_eq!(sub.contains(&y).unwrap(), f.fenchel_young_check(&x, &y).unwrap());
        }
    }

    #[test]
    fn directional_derivative_matches_difference_quotients(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=3);
        let f = random::function(&mut rng, dim, 4);
        let x = random::point_in(&mut rng, f.domain()).unwrap();
        let d = f.directional_derivative(&x).unwrap();
        for _ in 0..10 {
            let h = random::int_vector(&mut rng, dim, 3);
            prop_assert_eq!(value(&d, &h), difference_quotient_derivative(&f, &x, &h).unwrap());
        }
    }

    /// On the line the infimum is attained where one of the two terms bends.
    #[test]
    fn inf_convolution_on_the_line(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let f = random::function(&mut rng, 1, 2);
        let g = random::function(&mut rng, 1, 2);
        let Ok(h) = f.inf_convolution(&g) else {
            // minus infinity somewhere: some slope of one never meets the other
            return Ok(());
        };
        for k in -12..=12 {
            let x = rat(k, 2);
            let best = bend_points(&f, &g, &x)
                .into_iter()
                .filter_map(|y| {
                    let s = ext_add(&value(&f, &QVector::new(vec![y.clone()])), &value(&g, &QVector::new(vec![&x - &y])));
                    s.finite().cloned()
                })
                .min();
            let got = value(&h, &QVector::new(vec![x.clone()]));
            match best {
                Some(b) => prop_assert_eq!(got, fin(b)),
                None => prop_assert_eq!(got, ExtendedValue::PlusInfinity),
            }
        }
    }

    #[test]
    fn subdifferential_of_a_sum(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let dim = rng.gen_range(1..=2);
        let anchor = random::int_vector(&mut rng, dim, 2);
        let f = random::function_through(&mut rng, &anchor, 3);
        let g = random::function_through(&mut rng, &anchor, 3);
        let h = f.add(&g).unwrap();
        let x = random::point_in(&mut rng, h.domain()).unwrap();
        let lhs = h.subdifferential(&x).unwrap();
        let rhs = f.subdifferential(&x).unwrap().minkowski_sum(&g.subdifferential(&x).unwrap()).unwrap();
        prop_assert!(lhs.set_equal(&rhs).unwrap());
    }
}
