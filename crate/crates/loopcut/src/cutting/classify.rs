//! The cusp-point classifier: which gap, if any, holds a boundary point.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use super::catalog::{Catalog, Lookup};
use super::farey::{self, ChartLine};
use super::gap::{Gap, Side};
use crate::error::{Error, Result};
use crate::exact::{BoundaryPoint, IntervalReal};
use crate::surface::{GroupElement, ParabolicPoint, SurfaceGroup};

/// Largest slope norm a rational search escalates to.
pub const MAX_RATIONAL_NORM: usize = 64;

/// How many refinements an interval point gets before it is declared unresolved.
pub const MAX_REFINEMENTS: usize = 24;

/// Outcome of locating `x` relative to the gaps at `p`.
#[derive(Clone, Debug)]
pub enum PointClass {
    /// `x ∈ I^ε(p, q)`; `g` is the element a derived sequence takes from this gap.
    InGap { side: Side, q: ParabolicPoint, g: GroupElement, gap: Box<Gap> },
    /// `x` lies outside every open gap.
    InR,
    /// Not located among gaps of slope norm up to the given budget.
    Unresolved(usize),
}

impl PointClass {
    pub fn is_in_gap(&self) -> bool {
        matches!(self, PointClass::InGap { .. })
    }
}

/// Which computation counts self-crossings of a cusp arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingOracle {
    /// Exact count from the Farey triangles met by the arc.
    CuttingSequence,
    /// Crossing translates by reduced words of length at most the bound; a lower bound.
    BoundedWordSearch(usize),
}

/// A surface together with cached gap catalogs at its cusp.
pub struct Cutter {
    surface: SurfaceGroup,
    catalogs: Mutex<BTreeMap<usize, Arc<Catalog>>>,
}

impl Cutter {
    pub fn new(surface: SurfaceGroup) -> Cutter {
        Cutter { surface, catalogs: Mutex::new(BTreeMap::new()) }
    }

    pub fn surface(&self) -> &SurfaceGroup {
        &self.surface
    }

    /// Gap catalog at `∞` up to slope norm `norm`, cut down from a larger cached one when possible.
    pub fn catalog(&self, norm: usize) -> Result<Arc<Catalog>> {
        let mut cache = self.catalogs.lock().expect("catalog cache poisoned");
        if let Some(c) = cache.get(&norm) {
            return Ok(c.clone());
        }
        let built = match cache.range(norm..).next() {
            Some((_, larger)) => larger.restrict(norm),
            None => Catalog::build(&self.surface, norm)?,
        };
        let built = Arc::new(built);
        cache.insert(norm, built.clone());
        Ok(built)
    }

    /// Gaps `I(p, q)` with `|g(p, q)| ≤ budget`, centers taken in one period of the chart at `p`.
    pub fn enumerate_gaps(&self, p: &ParabolicPoint, budget: usize) -> Result<Vec<Gap>> {
        // a word of length L has slope norm at most L
        let catalog = self.catalog(budget)?;
        catalog
            .entries()
            .iter()
            .filter(|e| e.gap.g_pq.len() <= budget)
            .map(|e| if p.witness.is_identity() { Ok(e.gap.clone()) } else { e.gap.transport(&self.surface, &p.witness) })
            .collect()
    }

    /// Number of self-crossings of the projected arc `λ(p, q)`.
    pub fn self_intersection_count(&self, p: &ParabolicPoint, q: &ParabolicPoint, oracle: CrossingOracle) -> Result<u64> {
        let chart_q = self.surface.inverse(&p.witness).matrix().apply(&q.point)?;
        let BoundaryPoint::Rational(chart_q) = chart_q else {
            return Err(Error::SamePoint);
        };
        match oracle {
            CrossingOracle::CuttingSequence => farey::self_crossings(&self.surface, &chart_q),
            CrossingOracle::BoundedWordSearch(bound) => Ok(word_search_crossings(&self.surface, &chart_q, bound) / 2),
        }
    }

    /// Crossings in the surface between the arcs whose chart lifts are `[∞, q]` and `[∞, r]`.
    pub fn arc_crossings(&self, q: &BoundaryPoint, r: &BoundaryPoint) -> Result<u64> {
        let (BoundaryPoint::Rational(q), BoundaryPoint::Rational(r)) = (q, r) else {
            return Err(Error::NotRational);
        };
        let c = self.surface.cusp_width();
        let (q, r) = (farey::reduce_foot(q, c), farey::reduce_foot(r, c));
        let same = q == r || farey::reduce_foot(&farey::reversed_foot(&self.surface, &q)?, c) == r;
        let a = ChartLine::new(q)?;
        let b = ChartLine::new(r)?;
        let n = farey::crossing_lifts(&self.surface, &a, &b).len() as u64;
        Ok(if same { n / 2 } else { n })
    }

    /// Locates `x` among the open gaps `I^±(p, q)`.
    ///
    /// Rational points are decided exactly: a simple arc means `x` is outside every gap,
    /// otherwise the containing gap is searched for with a growing budget. Other points
    /// are looked up at the given budget; gap end points count as outside.
    pub fn classify_point(&self, p: &ParabolicPoint, x: &BoundaryPoint, budget: usize) -> Result<PointClass> {
        let s = &self.surface;
        let chart = s.inverse(&p.witness).matrix().apply(x)?;
        if chart.is_infinity() {
            return Err(Error::SamePoint);
        }
        let (n, y) = s.reduce_point(&chart)?;
        // chart = y + n·c
        let to_chart = s.mul(&p.witness, &s.cusp_translation(&n));
        let located = match &y {
            BoundaryPoint::Rational(r) => {
                if farey::self_crossings(s, r)? == 0 {
                    return Ok(PointClass::InR);
                }
                let mut norm = budget.max(1);
                loop {
                    let catalog = self.catalog(norm)?;
                    match catalog.lookup(&y)? {
                        Lookup::Inside { index, shift, side } => break Some((catalog, index, shift, side)),
                        Lookup::Boundary => {
                            return Err(Error::Invariant(format!("non-simple {r} on a gap boundary")))
                        }
                        Lookup::Outside if norm >= MAX_RATIONAL_NORM => break None,
                        Lookup::Outside => norm = (norm * 2).min(MAX_RATIONAL_NORM),
                    }
                }
            }
            BoundaryPoint::Surd(_) => {
                let catalog = self.catalog(budget)?;
                match catalog.lookup(&y)? {
                    Lookup::Inside { index, shift, side } => Some((catalog, index, shift, side)),
                    Lookup::Boundary => return Ok(PointClass::InR),
                    Lookup::Outside => None,
                }
            }
            BoundaryPoint::Interval(i) => {
                let catalog = self.catalog(budget)?;
                self.lookup_interval(&catalog, i)?.map(|(index, shift, side)| (catalog, index, shift, side))
            }
            BoundaryPoint::Infinity => unreachable!("finite after reduction"),
        };
        let Some((catalog, index, shift, side)) = located else {
            return Ok(PointClass::Unresolved(budget));
        };
        let t = s.mul(&to_chart, &s.cusp_translation(&BigInt::from(shift)));
        let gap = catalog.entries()[index].gap.transport(s, &t)?;
        let g = gap.step_element(s, side);
        Ok(PointClass::InGap { side, q: gap.q.clone(), g, gap: Box::new(gap) })
    }

    /// Gap side holding the whole enclosure of an interval point, refining as needed.
    fn lookup_interval(&self, catalog: &Catalog, i: &IntervalReal) -> Result<Option<(usize, i64, Side)>> {
        let mut cur = i.clone();
        for _ in 0..=MAX_REFINEMENTS {
            let lo = catalog.lookup(&BoundaryPoint::Rational(cur.lo().clone()))?;
            let hi = catalog.lookup(&BoundaryPoint::Rational(cur.hi().clone()))?;
            if let (Lookup::Inside { index, shift, side }, Lookup::Inside { index: j, shift: k, side: t }) = (&lo, &hi) {
                if (index, shift, side) == (j, k, t) {
                    return Ok(Some((*index, *shift, *side)));
                }
            }
            match cur.refine() {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(None)
    }
}

/// Number of words `h` with `|h| ≤ bound` whose translate `h·[∞, q]` crosses `[∞, q]`.
pub fn word_search_crossings(surface: &SurfaceGroup, q: &num_rational::BigRational, bound: usize) -> u64 {
    let mut count = 0;
    for len in 1..=bound {
        for w in crate::surface::Word::all_of_length(len) {
            if farey::crosses(q, &surface.evaluate(&w), q) {
                count += 1;
            }
        }
    }
    count
}
