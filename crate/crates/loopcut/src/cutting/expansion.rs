//! Derived sequences: repeated loop cutting along a ray from the cusp.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::classify::{Cutter, PointClass};
use super::farey;
use super::gap::{Gap, Side, SymbolicInterval};
use crate::error::{Error, Result};
use crate::exact::BoundaryPoint;
use crate::surface::{GroupElement, ParabolicPoint};

#[derive(Clone, Debug)]
pub struct Step {
    pub g: GroupElement,
    pub point: ParabolicPoint,
    pub side: Side,
    /// Gap at the previous point that holds `x`.
    pub gap: Gap,
    /// `g_i g_{i−1} ⋯ g_1`.
    pub partial: GroupElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Terminal {
    LandedInR,
    Exhausted(usize),
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct DerivedExpansion {
    pub x: BoundaryPoint,
    pub base: ParabolicPoint,
    pub steps: Vec<Step>,
    pub terminal: Terminal,
}

/// One line of an expansion transcript.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub word: String,
    pub matrix: String,
    pub point: String,
    pub side: Side,
    pub gap_left: String,
    pub gap_center: String,
    pub gap_right: String,
}

/// Default slope-norm budget for locating irrational points.
pub const DEFAULT_BUDGET: usize = 16;

impl Cutter {
    /// Derived sequence of `x` from the cusp at `∞`.
    pub fn derived_expansion(&self, x: &BoundaryPoint, max_steps: usize) -> Result<DerivedExpansion> {
        let base = self.surface().parabolic_witness(&BoundaryPoint::Infinity)?;
        self.derived_expansion_from(&base, x, max_steps, DEFAULT_BUDGET)
    }

    /// Derived sequence of `x` from `base`, locating irrational points at slope norm `budget`.
    ///
    /// For a rational `x` the number of self-crossings of `λ(p_i, x)` is checked to drop
    /// at every step, and running out of steps is an error.
    pub fn derived_expansion_from(
        &self,
        base: &ParabolicPoint,
        x: &BoundaryPoint,
        max_steps: usize,
        budget: usize,
    ) -> Result<DerivedExpansion> {
        let s = self.surface();
        let rational = matches!(x, BoundaryPoint::Rational(_));
        let mut steps: Vec<Step> = Vec::new();
        let mut current = base.clone();
        let mut partial = s.identity();
        let mut crossings = if rational { Some(self.crossings_from(&current, x)?) } else { None };
        loop {
            if steps.len() == max_steps {
                if rational {
                    return Err(Error::StepBudgetExceeded { point: x.to_string(), steps: max_steps });
                }
                return Ok(DerivedExpansion { x: x.clone(), base: base.clone(), steps, terminal: Terminal::Exhausted(max_steps) });
            }
            let terminal = match self.classify_point(&current, x, budget)? {
                PointClass::InR => Terminal::LandedInR,
                PointClass::Unresolved(_) => Terminal::Unresolved,
                PointClass::InGap { side, g, gap, .. } => {
                    let point = s.translate_point(&g, &current);
                    debug_assert!(point == gap.q);
                    partial = s.mul(&g, &partial);
                    if let Some(before) = crossings {
                        let after = self.crossings_from(&point, x)?;
                        if after >= before {
                            return Err(Error::Invariant(format!(
                                "self-crossings of the ray to {x} went from {before} to {after} at step {}",
                                steps.len() + 1
                            )));
                        }
                        crossings = Some(after);
                    }
                    steps.push(Step { g, point: point.clone(), side, gap: *gap, partial: partial.clone() });
                    current = point;
                    continue;
                }
            };
            return Ok(DerivedExpansion { x: x.clone(), base: base.clone(), steps, terminal });
        }
    }

    fn crossings_from(&self, p: &ParabolicPoint, x: &BoundaryPoint) -> Result<u64> {
        match self.surface().inverse(&p.witness).matrix().apply(x)? {
            BoundaryPoint::Rational(r) => farey::self_crossings(self.surface(), &r),
            _ => Err(Error::SamePoint),
        }
    }
}

impl DerivedExpansion {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The shortcut elements `g_1, g_2, …`.
    pub fn elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.steps.iter().map(|s| &s.g)
    }

    /// `⋂_{i ≤ n} I^{ε_i}(p_{i−1}, p_i)`: the component containing `x`, with symbolic ends.
    pub fn agreement_neighborhood(&self, n: usize) -> Result<SymbolicInterval> {
        if n == 0 || n > self.steps.len() {
            return Err(Error::TooFewSteps { have: self.steps.len(), want: n });
        }
        let mut u = self.steps[0].gap.symbolic_side(self.steps[0].side)?;
        for step in &self.steps[1..n] {
            let next = step.gap.symbolic_side(step.side)?;
            u = u.meet_at(&next, &self.x)?;
        }
        Ok(u)
    }

    pub fn records(&self) -> Vec<StepRecord> {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| StepRecord {
                step: i + 1,
                word: s.g.word().to_string(),
                matrix: s.g.matrix().to_string(),
                point: s.point.point.to_string(),
                side: s.side,
                gap_left: s.gap.i_full.left.to_string(),
                gap_center: s.gap.q.point.to_string(),
                gap_right: s.gap.i_full.right.to_string(),
            })
            .collect()
    }

    /// Writes one JSON record per step.
    pub fn write_transcript(&self, out: &mut impl Write) -> Result<()> {
        for r in self.records() {
            let line = serde_json::to_string(&r).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}
