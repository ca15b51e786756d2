use loopcut::exact::{
    cyclic_order, BoundaryPoint, CircleInterval, Classification, Containment, FixedPoints, MoebiusMap, Orientation,
    Surd,
};
use loopcut::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn m(a: i64, b: i64, c: i64, d: i64) -> MoebiusMap {
    MoebiusMap::from_i64(a, b, c, d).unwrap()
}

fn pt(s: &str) -> BoundaryPoint {
    s.parse().unwrap()
}

#[test]
fn compose_examples() {
    let a = m(1, 1, 1, 2);
    let b = m(1, -1, -1, 2);
    assert_eq!(a.compose(&MoebiusMap::identity()), a);
    assert_eq!(a.compose(&b), m(0, 1, -1, 3));
    let comm = a.compose(&b).compose(&a.inverse()).compose(&b.inverse());
    assert_eq!(comm, m(1, 0, 6, 1));
    assert_eq!(format!("{comm}"), "[[1,0],[6,1]]");
}

#[test]
fn determinant_is_enforced() {
    assert_eq!(MoebiusMap::from_i64(2, 0, 0, 1), Err(Error::Determinant(BigInt::from(2))));
}

#[test]
fn classify_examples() {
    assert_eq!(MoebiusMap::identity().classify(), Classification::Identity);
    assert_eq!(m(1, 0, 6, 1).classify(), Classification::Parabolic);
    assert_eq!(m(1, 1, 1, 2).classify(), Classification::Hyperbolic);
    assert_eq!(m(0, -1, 1, 0).classify(), Classification::Elliptic);
    assert_eq!(m(0, -1, 1, 1).classify(), Classification::Elliptic);
}

#[test]
fn fixed_point_examples() {
    assert_eq!(m(1, 0, 6, 1).fixed_points().unwrap(), FixedPoints::Parabolic(BoundaryPoint::int(0)));
    let FixedPoints::Hyperbolic { attracting, repelling } = m(1, 1, 1, 2).fixed_points().unwrap() else {
        panic!("hyperbolic expected");
    };
    assert_eq!(attracting, pt("(-1+1*sqrt(5))/2"));
    assert_eq!(repelling, pt("(-1-1*sqrt(5))/2"));
    let FixedPoints::Hyperbolic { attracting, repelling } = m(2, 1, 1, 1).fixed_points().unwrap() else {
        panic!("hyperbolic expected");
    };
    assert_eq!(attracting.to_string(), "(1+1*sqrt(5))/2");
    assert_eq!(repelling.to_string(), "(1-1*sqrt(5))/2");
    assert_eq!(MoebiusMap::identity().fixed_points(), Err(Error::IdentityInput));
    assert_eq!(m(0, -1, 1, 0).fixed_points(), Err(Error::EllipticInput));
}

#[test]
fn translation_length_examples() {
    let l3 = m(1, 1, 1, 2).translation_length().unwrap();
    assert!((l3 - 1.9248473002384139).abs() < 1e-12);
    let six = m(5, 1, 4, 1).compose(&MoebiusMap::identity());
    assert_eq!(six.abs_trace(), BigInt::from(6));
    assert!((six.translation_length().unwrap() - 3.525494348078172).abs() < 1e-12);
    assert_eq!(six.inverse().translation_length().unwrap(), six.translation_length().unwrap());
    assert_eq!(m(1, 0, 6, 1).translation_length(), Err(Error::NotHyperbolic));
}

#[test]
fn cyclic_order_examples() {
    let (zero, one, inf) = (BoundaryPoint::int(0), BoundaryPoint::int(1), BoundaryPoint::Infinity);
    assert_eq!(cyclic_order(&zero, &one, &inf).unwrap(), Orientation::Positive);
    assert_eq!(cyclic_order(&zero, &inf, &one).unwrap(), Orientation::Negative);
    assert_eq!(cyclic_order(&zero, &zero, &one).unwrap(), Orientation::Degenerate);
    assert_eq!(cyclic_order(&inf, &zero, &one).unwrap(), Orientation::Positive);
}

#[test]
fn interval_examples() {
    let i = CircleInterval::new(BoundaryPoint::int(0), BoundaryPoint::Infinity).unwrap();
    assert_eq!(i.contains(&BoundaryPoint::int(5)), Containment::Yes);
    let j = CircleInterval::new(BoundaryPoint::int(0), BoundaryPoint::int(1)).unwrap();
    assert_eq!(j.contains(&BoundaryPoint::int(2)), Containment::No);
    let k = CircleInterval::new(pt("(-1-1*sqrt(5))/2"), BoundaryPoint::int(0)).unwrap();
    assert_eq!(k.contains(&BoundaryPoint::int(-1)), Containment::Yes);
    assert_eq!(k.contains(&BoundaryPoint::int(-2)), Containment::No);
    let fuzzy = pt("-1.6");
    assert_eq!(k.contains(&fuzzy), Containment::Unresolved);
}

#[test]
fn surd_comparisons_across_fields() {
    // √2 + √3 against π-free rationals and other fields
    let s2 = pt("(0+1*sqrt(2))/1");
    let s3 = pt("(0+1*sqrt(3))/1");
    assert!(s2.line_cmp(&s3).unwrap().is_lt());
    let a = pt("(1+1*sqrt(2))/1");
    let b = pt("(0+1*sqrt(6))/1");
    // 1 + √2 ≈ 2.414 < √6 ≈ 2.449
    assert!(a.line_cmp(&b).unwrap().is_lt());
    let c = pt("(0+2*sqrt(2))/1");
    assert_eq!(c, pt("(0+1*sqrt(8))/1"));
    assert_eq!(pt("(0+1*sqrt(8))/1").to_string(), "(0+2*sqrt(2))/1");
}

#[test]
fn serialization_round_trip() {
    for s in ["inf", "3/7", "-2/1", "(-1+1*sqrt(5))/2", "(3-2*sqrt(7))/5"] {
        assert_eq!(pt(s).to_string(), s);
    }
    assert_eq!(pt("4").to_string(), "4/1");
    assert!(matches!(pt("0.25"), BoundaryPoint::Interval(_)));
    assert!("1/0".parse::<BoundaryPoint>().is_err());
    assert!("(1+1*sqrt(4))/2".parse::<Surd>().is_err());
}

#[test]
fn surd_enclosure_is_tight() {
    let Ok(BoundaryPoint::Surd(s)) = "(-7+3*sqrt(11))/4".parse::<BoundaryPoint>() else { panic!() };
    let (lo, hi) = s.enclosure(100);
    assert!(s.cmp_rational(&lo).is_gt() && s.cmp_rational(&hi).is_lt());
    let w = &hi - &lo;
    assert!(w < BigRational::new(BigInt::from(1), BigInt::from(1u64 << 60)));
    assert!((s.to_f64() - (-7.0 + 3.0 * 11f64.sqrt()) / 4.0).abs() < 1e-15);
}

fn matrix_strategy() -> impl Strategy<Value = MoebiusMap> {
    // products of S and T powers cover the modular group
    prop::collection::vec((-3i64..=3, any::<bool>()), 1..8).prop_map(|steps| {
        let s = m(0, -1, 1, 0);
        steps.into_iter().fold(MoebiusMap::identity(), |acc, (k, flip)| {
            let t = m(1, k, 0, 1);
            let acc = acc.compose(&t);
            if flip {
                acc.compose(&s)
            } else {
                acc
            }
        })
    })
}

fn exact_point_strategy() -> impl Strategy<Value = BoundaryPoint> {
    prop_oneof![
        Just(BoundaryPoint::Infinity),
        (-50i64..50, 1i64..20).prop_map(|(n, d)| BoundaryPoint::ratio(n, d)),
        (-20i64..20, prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)], prop_oneof![Just(2i64), Just(3), Just(5), Just(7)], 1i64..6)
            .prop_map(|(u, v, d, w)| format!("({u}{v:+}*sqrt({d}))/{w}").parse().unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn compose_is_associative(x in matrix_strategy(), y in matrix_strategy(), z in matrix_strategy()) {
        prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
        prop_assert!(x.inverse().compose(&x).is_identity());
    }

    #[test]
    fn fixed_points_are_fixed(g in matrix_strategy()) {
        match g.fixed_points() {
            Ok(FixedPoints::Hyperbolic { attracting, repelling }) => {
                prop_assert_eq!(g.apply(&attracting).unwrap(), attracting.clone());
                prop_assert_eq!(g.apply(&repelling).unwrap(), repelling.clone());
                prop_assert!(attracting != repelling);
            }
            Ok(FixedPoints::Parabolic(p)) => prop_assert_eq!(g.apply(&p).unwrap(), p),
            Err(e) => prop_assert!(matches!(e, Error::IdentityInput | Error::EllipticInput)),
        }
    }

    #[test]
    fn cyclic_order_is_moebius_invariant(
        g in matrix_strategy(),
        x in exact_point_strategy(),
        y in exact_point_strategy(),
        z in exact_point_strategy(),
    ) {
        let before = cyclic_order(&x, &y, &z).unwrap();
        let after = cyclic_order(&g.apply(&x).unwrap(), &g.apply(&y).unwrap(), &g.apply(&z).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn classification_is_conjugation_invariant(g in matrix_strategy(), h in matrix_strategy()) {
        prop_assert_eq!(h.conjugate_by(&g).classify(), h.classify());
    }

    #[test]
    fn exact_points_round_trip(x in exact_point_strategy()) {
        let back: BoundaryPoint = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }
}
