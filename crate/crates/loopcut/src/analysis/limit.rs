//! Limit sets of the pants subgroups `⟨w, v w⁻¹ v⁻¹⟩` cut out by a simple closed geodesic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::boxcount::{count_boxes, ClosedArc, DimensionReport};
use crate::cutting::catalog::slope_of;
use crate::error::{Error, Result};
use crate::exact::{BoundaryPoint, Classification, MoebiusMap};
use crate::surface::{GroupElement, SurfaceGroup, Word};
use crate::topology::{enumerate_classes, MappingClass};

/// Dyadic levels used when none are given.
pub const LIMIT_SET_LEVELS: std::ops::RangeInclusive<u32> = 4..=12;

/// Largest cusp shift tried before a tail is accepted as it is.
const MAX_SHIFT: i64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct LimitSetModel {
    pub slope: (i64, i64),
    /// `w`, a simple closed geodesic.
    pub curve: GroupElement,
    /// `v w⁻¹ v⁻¹`, so that `curve · partner = K`.
    pub partner: GroupElement,
    /// `D(w)` and `D(w⁻¹)`: each letter maps the complement of the other's interval into its own.
    pub intervals: [(BigRational, BigRational); 2],
}

fn rational(x: BoundaryPoint) -> Result<BigRational> {
    match x {
        BoundaryPoint::Rational(r) => Ok(r),
        _ => Err(Error::Invariant("cover end point at infinity".into())),
    }
}

/// Base of the isometric circle `|c z + d| = 1`.
fn isometric_base(m: &MoebiusMap) -> Result<(BigRational, BigRational)> {
    let [_, _, c, d] = m.entries();
    if c.is_zero() {
        return Err(Error::Invariant("element fixes infinity".into()));
    }
    let center = -BigRational::new(d.clone(), c.clone());
    let radius = BigRational::new(BigInt::one(), c.abs());
    Ok((&center - &radius, center + radius))
}

impl LimitSetModel {
    /// Model for the curve `w` with partner built from `v`; requires `w v w⁻¹ v⁻¹ = K`.
    pub fn new(surface: &SurfaceGroup, w: Word, v: Word) -> Result<LimitSetModel> {
        let partner = v.mul(&w.inverse()).mul(&v.inverse());
        if &w.mul(&partner) != surface.peripheral_word() {
            return Err(Error::Invariant(format!("{w} and {v} do not multiply to the peripheral word")));
        }
        let curve = surface.element(w);
        if curve.matrix().classify() != Classification::Hyperbolic {
            return Err(Error::NotHyperbolic);
        }
        let intervals = [isometric_base(&curve.matrix().inverse())?, isometric_base(curve.matrix())?];
        let model = LimitSetModel { slope: slope_of(curve.word()), curve, partner: surface.element(partner), intervals };
        if !model.intervals_disjoint(surface) {
            return Err(Error::Invariant(format!("contraction intervals of {} overlap", model.curve.word())));
        }
        Ok(model)
    }

    /// Model for the primitive homology class `slope`, searching twist classes of length at most `bound`.
    pub fn for_slope(surface: &SurfaceGroup, slope: (i64, i64), bound: usize) -> Result<LimitSetModel> {
        let mut classes = vec![MappingClass::identity()];
        classes.extend(enumerate_classes(surface, bound)?);
        let a: Word = "a".parse()?;
        let b: Word = "b".parse()?;
        let target = if slope.0 < 0 || (slope.0 == 0 && slope.1 < 0) { (-slope.0, -slope.1) } else { slope };
        let mut best: Option<LimitSetModel> = None;
        for phi in classes.iter().filter(|m| m.orientation() == 1) {
            let w = phi.apply_word(&a);
            if slope_of(&w) != target {
                continue;
            }
            if let Ok(m) = LimitSetModel::new(surface, w, phi.apply_word(&b)) {
                let better = best.as_ref().is_none_or(|b| {
                    (m.curve.len(), m.curve.word()) < (b.curve.len(), b.curve.word())
                });
                if better {
                    best = Some(m);
                }
            }
        }
        best.ok_or_else(|| Error::WitnessSearchExhausted(format!("slope {slope:?}")))
    }

    /// The two intervals are disjoint modulo the cusp width.
    fn intervals_disjoint(&self, surface: &SurfaceGroup) -> bool {
        let c = surface.cusp_width();
        let [(l0, r0), (l1, r1)] = &self.intervals;
        if r0 - l0 >= *c || r1 - l1 >= *c {
            return false;
        }
        // shift the second so its left end lies in [l0, l0 + c)
        let n = ((l1 - l0) / c).floor();
        let l1 = l1 - c * &n;
        let r1 = r1 - c * &n;
        *r0 < l1 && r1 < l0 + c
    }

    /// The cusp `∞` is a limit point: `K = curve · partner` is parabolic and fixes it.
    pub fn contains_cusp(&self, surface: &SurfaceGroup) -> bool {
        let k = surface.element(self.curve.word().mul(self.partner.word()));
        k.word() == surface.peripheral_word()
            && k.matrix().classify() == Classification::Parabolic
            && k.matrix().apply_infinity() == BoundaryPoint::Infinity
    }

    /// Closed intervals covering the limit set modulo `K`.
    ///
    /// Pieces are `g·D(s)` for words alternating cusp shifts and letters `w^{±1}`, refined
    /// until they are `depth` letters long or shorter than `finest`. Shifts beyond the
    /// range kept at a piece are covered by the single interval around the image of `∞`.
    pub fn cover(&self, surface: &SurfaceGroup, depth: usize, finest: &BigRational) -> Result<Vec<(BigRational, BigRational)>> {
        let c = surface.cusp_width();
        let letters = [self.curve.matrix().clone(), self.curve.matrix().inverse()];
        let lowest = self.intervals[0].0.clone().min(self.intervals[1].0.clone());
        let highest = self.intervals[0].1.clone().max(self.intervals[1].1.clone());
        let mut out = Vec::new();
        let mut stack: Vec<(MoebiusMap, usize, usize, (BigRational, BigRational))> =
            (0..2).map(|s| (MoebiusMap::identity(), s, 1, self.intervals[s].clone())).collect();
        while let Some((g, s, d, piece)) = stack.pop() {
            if d >= depth || &piece.1 - &piece.0 < *finest {
                out.push(piece);
                continue;
            }
            let h = g.compose(&letters[s]);
            let mut n: i64 = 1;
            let tail = loop {
                let span = c * BigRational::from_integer(BigInt::from(n));
                let lo = rational(h.apply_rational(&(&highest + &span)))?;
                let hi = rational(h.apply_rational(&(&lowest - &span)))?;
                if &hi - &lo < *finest || n >= MAX_SHIFT {
                    break (lo, hi, n);
                }
                n *= 2;
            };
            out.push((tail.0, tail.1));
            for shift in -tail.2..=tail.2 {
                let k = surface.cusp_translation(&BigInt::from(shift));
                let m = BigRational::from_integer(BigInt::from(shift)) * c;
                let hk = h.compose(k.matrix());
                for t in 0..2 {
                    if shift == 0 && t != s {
                        // the letter's own inverse would cancel
                        continue;
                    }
                    let (l, r) = &self.intervals[t];
                    let piece = (rational(h.apply_rational(&(l + &m)))?, rational(h.apply_rational(&(r + &m)))?);
                    stack.push((hk.clone(), t, d + 1, piece));
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Box counts of the cover of `Λ⟨w, v w⁻¹ v⁻¹⟩` at word depth `depth`, one period of the cusp.
pub fn limit_set_dimension(
    surface: &SurfaceGroup,
    model: &LimitSetModel,
    depth: usize,
    levels: std::ops::RangeInclusive<u32>,
) -> Result<DimensionReport> {
    let c = surface.cusp_width();
    let finest_level = *levels.end();
    let finest = c / BigRational::from_integer(BigInt::one() << (finest_level + 2));
    let pieces = model.cover(surface, depth, &finest)?;
    let arcs: Vec<ClosedArc> = pieces
        .into_iter()
        .map(|(l, r)| {
            let n = (&l / c).floor();
            let back = c * &n;
            ClosedArc { start: BoundaryPoint::Rational(l - &back), end: BoundaryPoint::Rational(r - &back) }
        })
        .collect();
    let counts = levels.map(|k| Ok((k, count_boxes(&arcs, c, 1, k)?))).collect::<Result<Vec<_>>>()?;
    Ok(DimensionReport::from_counts(&format!("limit-set {} {}", model.slope.0, model.slope.1), depth, 1, c, counts))
}
