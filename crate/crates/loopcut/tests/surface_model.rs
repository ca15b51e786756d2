mod common;

use loopcut::exact::{BoundaryPoint, Classification, FixedPoints, MoebiusMap};
use loopcut::surface::{load_surface, modular_character, Letter, SurfaceGroup, Word};
use loopcut::Error;
use num_bigint::BigInt;

fn m(a: i64, b: i64, c: i64, d: i64) -> MoebiusMap {
    MoebiusMap::from_i64(a, b, c, d).unwrap()
}

#[test]
fn modular_torus_normalization() {
    let s = SurfaceGroup::modular_torus();
    let a0 = m(1, 1, 1, 2);
    let b0 = m(1, -1, -1, 2);
    let comm = a0.compose(&b0).compose(&a0.inverse()).compose(&b0.inverse());
    assert_eq!(comm, m(1, 0, 6, 1));
    assert_eq!(comm.fixed_points().unwrap(), FixedPoints::Parabolic(BoundaryPoint::int(0)));
    let k = s.evaluate(s.peripheral_word());
    assert_eq!(k, m(1, -6, 0, 1));
    assert_eq!(s.euler_characteristic(), -1);
    assert_eq!(s.generator(Letter::A), &m(2, -1, -1, 1));
    assert_eq!(s.generator(Letter::B), &m(2, 1, 1, 1));
}

#[test]
fn theta_at_infinity_translates_by_minus_six() {
    let s = SurfaceGroup::modular_torus();
    let theta = s.theta_infinity();
    assert_eq!(theta.matrix(), &m(1, -6, 0, 1));
    assert_eq!(theta.matrix().apply_int(0), BoundaryPoint::int(-6));
    assert_eq!(theta.word().to_string(), "abAB");
}

#[test]
fn modular_character_values() {
    assert_eq!(modular_character(&m(1, 1, 0, 1)), 1);
    assert_eq!(modular_character(&m(0, -1, 1, 0)), 3);
    assert_eq!(modular_character(&m(0, -1, 1, 1)), 4);
    assert_eq!(modular_character(&m(2, -1, -1, 1)), 0);
    assert_eq!(modular_character(&m(2, 1, 1, 1)), 0);
}

#[test]
fn contains_examples() {
    let s = SurfaceGroup::modular_torus();
    assert_eq!(s.contains(s.generator(Letter::A)), Some("a".parse().unwrap()));
    assert_eq!(s.contains(&m(1, 1, 0, 1)), None);
    assert_eq!(s.contains(&m(0, -1, 1, 0)), None);
    assert_eq!(s.contains(&MoebiusMap::identity()), Some(Word::empty()));
}

#[test]
fn word_problem_round_trip() {
    let s = SurfaceGroup::modular_torus();
    let mut rng = common::rng(7);
    for i in 0..500 {
        let w = common::random_word(&mut rng, 1 + i % 16);
        let g = s.evaluate(&w);
        assert_eq!(s.contains(&g), Some(w.clone()), "word {w}");
    }
    let w = common::random_word(&mut rng, 12);
    assert_eq!(s.contains(&s.evaluate(&w)), Some(w));
}

#[test]
fn non_members_are_rejected_by_descent_too() {
    // descent alone, without the character filter, must not accept foreign elements
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/torus_no_character.cfg");
    let s = load_surface(std::path::Path::new(path)).unwrap();
    assert!(!s.uses_modular_character());
    for g in [m(1, 1, 0, 1), m(0, -1, 1, 0), m(1, 0, 1, 1), m(3, 1, 2, 1)] {
        assert_eq!(s.contains(&g), None, "{g}");
    }
    let mut rng = common::rng(11);
    for _ in 0..50 {
        let w = common::random_word(&mut rng, 9);
        assert_eq!(s.contains(&s.evaluate(&w)), Some(w));
    }
}

#[test]
fn parabolic_witness_examples() {
    let s = SurfaceGroup::modular_torus();
    let p = s.parabolic_witness(&BoundaryPoint::Infinity).unwrap();
    assert!(p.witness.is_identity());
    for x in [BoundaryPoint::int(0), BoundaryPoint::ratio(22, 7), BoundaryPoint::ratio(-5, 3)] {
        let p = s.parabolic_witness(&x).unwrap();
        assert_eq!(p.witness.matrix().apply_infinity(), x);
        assert_eq!(s.evaluate(p.witness.word()), *p.witness.matrix());
    }
    assert_eq!(s.parabolic_witness(&"(1+1*sqrt(5))/2".parse().unwrap()).err(), Some(Error::NotRational));
}

#[test]
fn random_rationals_have_witnesses() {
    let s = SurfaceGroup::modular_torus();
    let mut rng = common::rng(3);
    for _ in 0..200 {
        let x = BoundaryPoint::Rational(common::random_rational(&mut rng, 60));
        let p = s.parabolic_witness(&x).unwrap();
        assert_eq!(p.point, x);
        assert_eq!(p.witness.matrix().apply_infinity(), x);
    }
}

#[test]
fn theta_is_parabolic_at_its_point() {
    let s = SurfaceGroup::modular_torus();
    let mut rng = common::rng(5);
    for _ in 0..50 {
        let x = BoundaryPoint::Rational(common::random_rational(&mut rng, 40));
        let p = s.parabolic_witness(&x).unwrap();
        let t = s.theta(&p);
        assert_eq!(t.matrix().classify(), Classification::Parabolic);
        assert_eq!(t.matrix().fixed_points().unwrap(), FixedPoints::Parabolic(x.clone()));
        // equivariance θ(g·p) = g θ(p) g⁻¹
        let g = s.element(common::random_word(&mut rng, 5));
        let gp = s.translate_point(&g, &p);
        assert_eq!(s.theta(&gp).matrix(), s.conjugate(&t, &g).matrix());
        // in the chart at p the conjugated element is θ(∞) again
        let back = s.conjugate(&t, &s.inverse(&p.witness));
        assert_eq!(back.matrix().apply_int(0), BoundaryPoint::int(-6));
    }
}

#[test]
fn pingpong_arcs_certify_freeness() {
    let s = SurfaceGroup::modular_torus();
    let mut rng = common::rng(9);
    for l in Letter::ALL {
        let own = s.pingpong_arc(l);
        for other in Letter::ALL {
            if other == l.inverse() {
                continue;
            }
            let arc = s.pingpong_arc(other);
            // sample rationals inside the other letter's arc
            for _ in 0..40 {
                let x = BoundaryPoint::Rational(common::random_rational(&mut rng, 30) - BigInt::from(3));
                if !arc.holds(&x).unwrap() {
                    continue;
                }
                let y = s.generator(l).apply(&x).unwrap();
                assert!(own.holds(&y).unwrap(), "{} sends {x} to {y}", l.to_char());
            }
        }
    }
}

#[test]
fn config_errors_carry_line_numbers() {
    let dir = std::env::temp_dir().join("loopcut-config-errors");
    std::fs::create_dir_all(&dir).unwrap();
    let good = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/torus_no_character.cfg"))
        .unwrap();
    let cases = [
        (good.replace("a = 2 -1 -1 1", "a = 2 -1 -1 2"), "determinant"),
        (good.replace("peripheral = abAB", "peripheral = abab"), "peripheral"),
        (good.replace("orientation = -1", "orientation = 1"), "orientation"),
        (good.replace("pingpong.A = 0 1", "pingpong.A = 0 2"), "letter"),
        (format!("{good}\nbogus = 1\n"), "unknown key"),
    ];
    for (text, needle) in cases {
        let path = dir.join("bad.cfg");
        std::fs::write(&path, &text).unwrap();
        match load_surface(&path) {
            Err(Error::Config { line, msg }) => {
                assert!(line > 0, "{msg}");
                assert!(msg.contains(needle), "{msg} lacks {needle}");
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }
}
