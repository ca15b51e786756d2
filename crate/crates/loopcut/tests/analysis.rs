mod common;

use std::cmp::Ordering;
use std::sync::OnceLock;

use loopcut::analysis::{
    count_boxes, drawn_widths, gap_records, limit_set_dimension, render_gaps, ClassAggregate, ClosedArc, DimensionReport,
    LimitSetModel, McShaneReport, BIRMAN_SERIES_LEVELS,
};
use loopcut::cutting::Cutter;
use loopcut::exact::BoundaryPoint;
use loopcut::surface::{SurfaceGroup, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn cutter() -> &'static Cutter {
    static C: OnceLock<Cutter> = OnceLock::new();
    C.get_or_init(|| Cutter::new(SurfaceGroup::modular_torus()))
}

fn report16() -> &'static McShaneReport {
    static R: OnceLock<McShaneReport> = OnceLock::new();
    R.get_or_init(|| cutter().mcshane_report(16).unwrap())
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

/// `2/(1+e^ℓ)` with `ℓ = 2 acosh(t/2)`, computed in floating point.
fn mcshane_term(trace: f64) -> f64 {
    let ell = 2.0 * (trace / 2.0).acosh();
    2.0 / (1.0 + ell.exp())
}

#[test]
fn systole_classes_match_the_length_formula() {
    let classes = report16().class_with_trace(3);
    let mut keys: Vec<&str> = classes.iter().map(|c| c.key.as_str()).collect();
    keys.sort();
    assert_eq!(keys, ["a", "ab", "b"]);
    for c in classes {
        assert!((c.length - 1.9248473002384139).abs() < 1e-12);
        assert!((c.width_value - mcshane_term(3.0)).abs() < 1e-9, "{c:?}");
        assert!((c.width_value - 0.2546440075000701).abs() < 1e-9);
        assert!(c.exact_match);
        assert_eq!(c.gaps, 2);
    }
}

#[test]
fn trace_six_classes_match_the_length_formula() {
    let classes = report16().class_with_trace(6);
    assert_eq!(classes.len(), 3);
    for c in classes {
        assert!((c.length - 3.5254943480).abs() < 1e-9);
        assert!((c.width_value - mcshane_term(6.0)).abs() < 1e-9, "{c:?}");
        assert!(c.exact_match);
    }
}

#[test]
fn every_enumerated_class_matches_up_to_missing_gaps() {
    for c in &report16().classes {
        let t: f64 = c.trace.parse().unwrap();
        // a class whose second gap needs a longer shortcut than the budget shows half its width
        let share = c.gaps as f64 / 2.0;
        assert_eq!(c.exact_match, c.gaps == 2, "{c:?}");
        assert!((c.width_value - share * mcshane_term(t)).abs() < 1e-9, "{c:?}");
    }
}

#[test]
fn total_width_is_nearly_one_and_grows_with_the_budget() {
    let r = report16();
    assert!(r.summary.total_width >= 0.95 && r.summary.total_width <= 1.0);
    assert!(r.summary.monotone && r.summary.periodic);
    let sums: Vec<f64> = r.summary.partial_sums.iter().map(|p| p.width).collect();
    assert!(sums.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(sums[0], 0.0);
    let by_class: f64 = r.classes.iter().map(|c| c.width_value).sum();
    assert!((by_class - r.summary.total_width).abs() < 1e-12);
    assert_eq!(r.classes.iter().map(|c| c.gaps).sum::<usize>(), r.summary.gaps);
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let a = cutter().mcshane_report(9).unwrap();
    let b = cutter().mcshane_report(9).unwrap();
    let (mut x, mut y) = (Vec::new(), Vec::new());
    a.write_lines(&mut x).unwrap();
    b.write_lines(&mut y).unwrap();
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + a.classes.len());
    for (line, class) in lines[1..].iter().zip(&a.classes) {
        let back: ClassAggregate = serde_json::from_str(line).unwrap();
        assert_eq!(&back, class);
    }
    let d = cutter().birman_series_dimension(9, 4..=10, 1).unwrap();
    let back: DimensionReport = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
    assert_eq!(back, d);
}

/// Box counts of the complement of the gaps by scanning every box against floating enclosures.
fn brute_counts(depth: usize, level: u32) -> u64 {
    let c = 6.0;
    let base = cutter().surface().parabolic_witness(&BoundaryPoint::Infinity).unwrap();
    let mut gaps: Vec<(f64, f64)> = cutter()
        .enumerate_gaps(&base, depth)
        .unwrap()
        .iter()
        .map(|g| {
            let l = g.i_full.left.to_f64();
            let r = g.i_full.right.to_f64();
            let n = (l / c).floor();
            (l - n * c, r - n * c)
        })
        .collect();
    let more: Vec<(f64, f64)> = gaps.iter().map(|(l, r)| (l - c, r - c)).collect();
    gaps.extend(more);
    let eps = c / f64::from(1u32 << level);
    (0..1u64 << level)
        .filter(|j| {
            let (lo, hi) = (*j as f64 * eps, (*j + 1) as f64 * eps);
            // the box misses the remaining set only if one gap contains it up to its open right end
            !gaps.iter().any(|(l, r)| *l < lo && hi <= *r)
        })
        .count() as u64
}

#[test]
fn birman_series_counts_match_a_box_scan() {
    for depth in [4, 10, 13] {
        let d = cutter().birman_series_dimension(depth, 4..=11, 1).unwrap();
        for s in &d.counts {
            assert_eq!(s.count, brute_counts(depth, s.level), "depth {depth} level {}", s.level);
        }
    }
}

#[test]
fn birman_series_without_gaps_has_exponent_one() {
    let d = cutter().birman_series_dimension(0, BIRMAN_SERIES_LEVELS, 1).unwrap();
    assert!(d.windows.iter().all(|w| w.exponent == 1.0));
    assert_eq!(d.finest, 1.0);
    assert_eq!(d.counts[0].count, 16);
}

#[test]
fn two_periods_double_the_counts() {
    for depth in [0, 7, 13] {
        let one = cutter().birman_series_dimension(depth, BIRMAN_SERIES_LEVELS, 1).unwrap();
        let two = cutter().birman_series_dimension(depth, BIRMAN_SERIES_LEVELS, 2).unwrap();
        for (x, y) in one.counts.iter().zip(&two.counts) {
            assert_eq!(2 * x.count, y.count);
        }
        assert_eq!(one.windows, two.windows);
    }
}

#[test]
fn birman_series_exponent_falls_with_the_budget() {
    let finest: Vec<f64> = [10, 13, 16]
        .iter()
        .map(|&l| cutter().birman_series_dimension(l, BIRMAN_SERIES_LEVELS, 1).unwrap().finest)
        .collect();
    assert!(finest[0] > finest[1] && finest[1] > finest[2], "{finest:?}");
    assert!(finest[2] <= 0.3, "{finest:?}");
    let counts = |l| cutter().birman_series_dimension(l, BIRMAN_SERIES_LEVELS, 1).unwrap().counts;
    for (x, y) in counts(13).iter().zip(counts(16)) {
        assert!(y.count <= x.count);
    }
}

fn arcs_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0i64..6000, 0i64..900), 1..12)
}

fn thousandths(arcs: &[(i64, i64)]) -> Vec<ClosedArc> {
    arcs.iter()
        .map(|&(s, w)| ClosedArc {
            start: BoundaryPoint::Rational(BigRational::new(BigInt::from(s), BigInt::from(1000))),
            end: BoundaryPoint::Rational(BigRational::new(BigInt::from(s + w), BigInt::from(1000))),
        })
        .collect()
}

proptest! {
    #[test]
    fn box_counts_refine_consistently(arcs in arcs_strategy(), level in 2u32..9) {
        let c = BigRational::from_integer(BigInt::from(6));
        let arcs = thousandths(&arcs);
        let coarse = count_boxes(&arcs, &c, 1, level).unwrap();
        let fine = count_boxes(&arcs, &c, 1, level + 1).unwrap();
        prop_assert!(coarse <= fine && fine <= 2 * coarse);
        prop_assert!(fine <= 1 << (level + 1));
        prop_assert_eq!(count_boxes(&arcs, &c, 3, level).unwrap(), 3 * coarse);
    }

    #[test]
    fn box_counts_match_a_scan(arcs in arcs_strategy(), level in 2u32..8) {
        let c = BigRational::from_integer(BigInt::from(6));
        let n = 1i64 << level;
        // box j is [6000 j / n, 6000 (j+1) / n) in thousandths
        let hit = (0..n).filter(|&j| {
            arcs.iter().any(|&(s, w)| {
                [0, 6000].iter().any(|shift| {
                    let (lo, hi) = (s - shift, s + w - shift);
                    lo * n < 6000 * (j + 1) && hi * n >= 6000 * j
                })
            })
        }).count() as u64;
        prop_assert_eq!(count_boxes(&thousandths(&arcs), &c, 1, level).unwrap(), hit);
    }
}

fn systole_models() -> &'static Vec<LimitSetModel> {
    static M: OnceLock<Vec<LimitSetModel>> = OnceLock::new();
    M.get_or_init(|| {
        [(1, 0), (0, 1), (1, 1)]
            .iter()
            .map(|&s| LimitSetModel::for_slope(cutter().surface(), s, 4).unwrap())
            .collect()
    })
}

#[test]
fn pants_generators_multiply_to_the_peripheral_word() {
    let s = cutter().surface();
    for m in systole_models() {
        let product = s.mul(&m.curve, &m.partner);
        assert_eq!(product.word(), s.peripheral_word());
        assert_eq!(product.matrix(), s.theta_infinity().matrix());
        assert!(m.contains_cusp(s));
        assert_eq!(m.curve.matrix().abs_trace(), BigInt::from(3));
    }
    let slopes: Vec<(i64, i64)> = systole_models().iter().map(|m| m.slope).collect();
    assert_eq!(slopes, [(1, 0), (0, 1), (1, 1)]);
}

#[test]
fn invalid_pants_are_rejected() {
    let s = cutter().surface();
    assert!(LimitSetModel::new(s, word("a"), word("a")).is_err());
    assert!(LimitSetModel::new(s, word("ab"), word("a")).is_err());
    assert!(LimitSetModel::new(s, word("ab"), word("b")).is_ok());
    assert!(LimitSetModel::new(s, word("a"), word("b")).is_ok());
}

/// `x` lies in some piece of the cover after reduction modulo 6.
fn covered(pieces: &[(BigRational, BigRational)], x: &BoundaryPoint) -> bool {
    let six = BigRational::from_integer(BigInt::from(6));
    pieces.iter().any(|(l, r)| {
        (-4..=4).any(|k| {
            let shift = &six * BigRational::from_integer(BigInt::from(k));
            let y = x.shifted(&shift);
            y.line_cmp(&BoundaryPoint::Rational(l.clone())).unwrap() != Ordering::Less
                && y.line_cmp(&BoundaryPoint::Rational(r.clone())).unwrap() != Ordering::Greater
        })
    })
}

#[test]
fn cover_contains_fixed_points_of_short_words() {
    let s = cutter().surface();
    let finest = BigRational::new(BigInt::from(6), BigInt::from(1 << 10));
    for m in systole_models() {
        let pieces = m.cover(s, 8, &finest).unwrap();
        let gens = [m.curve.word().clone(), m.curve.word().inverse(), m.partner.word().clone(), m.partner.word().inverse()];
        let mut words = vec![Word::empty()];
        for _ in 0..3 {
            words = words.iter().flat_map(|w| gens.iter().map(move |g| w.mul(g))).collect();
        }
        let mut checked = 0;
        for w in words.iter().filter(|w| !w.is_empty()) {
            let g = s.element(w.clone());
            if let Ok((p, q)) = g.matrix().axis() {
                for x in [p, q] {
                    if !x.is_infinity() {
                        assert!(covered(&pieces, &x), "{w} fixes {x} outside the cover");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 100);
        // the cover is a proper subset of one period
        let total: BigRational = pieces.iter().map(|(l, r)| r - l).sum();
        assert!(total < BigRational::from_integer(BigInt::from(6)));
    }
}

#[test]
fn systole_limit_sets_have_dimension_below_one() {
    let s = cutter().surface();
    let reports: Vec<DimensionReport> =
        systole_models().iter().map(|m| limit_set_dimension(s, m, 6, 4..=10).unwrap()).collect();
    for r in &reports {
        assert!(r.counts_monotone);
        assert!(r.finest < 0.95, "{r:?}");
    }
}

#[test]
fn render_has_one_rectangle_per_gap() {
    let svg = render_gaps(cutter(), 4).unwrap();
    let records = gap_records(cutter(), 4).unwrap();
    assert_eq!(svg.matches("<rect").count(), records.len());
    assert_eq!(render_gaps(cutter(), 4).unwrap(), svg);
    let mut drawn = drawn_widths(&svg);
    let mut exact: Vec<f64> = records.iter().map(|r| r.width).collect();
    drawn.sort_by(f64::total_cmp);
    exact.sort_by(f64::total_cmp);
    for (d, e) in drawn.iter().zip(&exact) {
        assert!((d - e).abs() < 1e-6, "{d} {e}");
    }
}

#[test]
fn render_colors_follow_the_geodesic_class() {
    let svg = render_gaps(cutter(), 9).unwrap();
    let records = gap_records(cutter(), 9).unwrap();
    let rects: Vec<&str> = svg.lines().filter(|l| l.starts_with("<rect")).collect();
    assert_eq!(rects.len(), records.len());
    let colors: std::collections::BTreeSet<&str> =
        rects.iter().map(|l| l.split("fill=\"").nth(1).unwrap().split('"').next().unwrap()).collect();
    let classes: std::collections::BTreeSet<&str> = records.iter().map(|r| r.class.as_str()).collect();
    assert_eq!(colors.len(), classes.len().min(8));
    let empty = render_gaps(cutter(), 0).unwrap();
    assert_eq!(empty.matches("<rect").count(), 0);
    assert!(empty.contains("<path d=\"M0.000000000 30.000000000H1200.000000000\""));
}
