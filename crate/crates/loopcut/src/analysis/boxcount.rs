//! Box counting on one or more periods of the horocycle.

use std::cmp::Ordering;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cutting::Cutter;
use crate::error::{Error, Result};
use crate::exact::{floor_div, BoundaryPoint};

/// Dyadic levels used when none are given: boxes of width `c/2^k`.
pub const BIRMAN_SERIES_LEVELS: std::ops::RangeInclusive<u32> = 4..=14;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleCount {
    pub level: u32,
    /// Box width `c/2^level`.
    pub scale: String,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub from: u32,
    pub to: u32,
    pub exponent: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub record: String,
    pub set: String,
    pub depth: usize,
    pub periods: u32,
    pub counts: Vec<ScaleCount>,
    pub windows: Vec<Window>,
    /// Exponent over the finest window.
    pub finest: f64,
    /// Counts never drop as boxes shrink.
    pub counts_monotone: bool,
}

impl DimensionReport {
    pub(crate) fn from_counts(set: &str, depth: usize, periods: u32, c: &BigRational, counts: Vec<(u32, u64)>) -> DimensionReport {
        let counts: Vec<ScaleCount> = counts
            .into_iter()
            .map(|(level, count)| ScaleCount {
                level,
                scale: (c / BigRational::from_integer(BigInt::one() << level)).to_string(),
                count,
            })
            .collect();
        let windows: Vec<Window> = counts
            .windows(2)
            .map(|w| Window {
                from: w[0].level,
                to: w[1].level,
                exponent: (w[1].count as f64 / w[0].count as f64).log2() / (w[1].level - w[0].level) as f64,
            })
            .collect();
        let counts_monotone = counts.windows(2).all(|w| w[0].count <= w[1].count);
        DimensionReport {
            record: "dimension".into(),
            set: set.into(),
            depth,
            periods,
            finest: windows.last().map_or(f64::NAN, |w| w.exponent),
            counts,
            windows,
            counts_monotone,
        }
    }

    pub fn write_line(&self, out: &mut impl Write) -> Result<()> {
        let line = serde_json::to_string(self).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{line}")?;
        Ok(())
    }
}

/// A closed arc `[start, end]` of the circle `ℝ/cℤ`, with `start ∈ [0, c)` and `end ≥ start`.
#[derive(Clone, Debug)]
pub struct ClosedArc {
    pub start: BoundaryPoint,
    pub end: BoundaryPoint,
}

/// Number of boxes `[jε, (j+1)ε)`, `ε = c/2^level`, over `periods` periods meeting any arc.
pub fn count_boxes(arcs: &[ClosedArc], c: &BigRational, periods: u32, level: u32) -> Result<u64> {
    let per = BigInt::one() << level;
    let total = &per * BigInt::from(periods);
    let eps = c / BigRational::from_integer(per.clone());
    let mut ranges: Vec<(BigInt, BigInt)> = Vec::new();
    for a in arcs {
        let first = floor_div(&a.start, &eps)?;
        let last = floor_div(&a.end, &eps)?;
        if &last - &first + 1 >= per {
            return Ok(total.to_u64().unwrap_or(u64::MAX));
        }
        for m in 0..periods {
            let shift = &per * BigInt::from(m);
            let (lo, hi) = (&first + &shift, &last + &shift);
            if hi >= total {
                ranges.push((lo, &total - 1));
                ranges.push((BigInt::zero(), hi - &total));
            } else {
                ranges.push((lo, hi));
            }
        }
    }
    ranges.sort();
    let mut count = BigInt::zero();
    let mut current: Option<(BigInt, BigInt)> = None;
    for (lo, hi) in ranges {
        current = match current {
            Some((a, b)) if lo <= &b + 1 => Some((a, b.max(hi))),
            Some((a, b)) => {
                count += b - a + 1;
                Some((lo, hi))
            }
            None => Some((lo, hi)),
        };
    }
    if let Some((a, b)) = current {
        count += b - a + 1;
    }
    count.to_u64().ok_or_else(|| Error::Invariant("box count overflow".into()))
}

impl Cutter {
    /// Box counts of the complement of the gaps at word-length budget `depth`.
    pub fn birman_series_dimension(&self, depth: usize, levels: std::ops::RangeInclusive<u32>, periods: u32) -> Result<DimensionReport> {
        let s = self.surface();
        let c = s.cusp_width();
        let base = s.parabolic_witness(&BoundaryPoint::Infinity)?;
        let gaps = if depth == 0 { Vec::new() } else { self.enumerate_gaps(&base, depth)? };
        let mut reduced: Vec<(BoundaryPoint, BoundaryPoint)> = gaps
            .iter()
            .map(|g| {
                let n = floor_div(&g.i_full.left, c)?;
                let back = -(c * BigRational::from_integer(n));
                Ok((g.i_full.left.shifted(&back), g.i_full.right.shifted(&back)))
            })
            .collect::<Result<_>>()?;
        let mut failed = None;
        reduced.sort_by(|x, y| {
            x.0.line_cmp(&y.0).unwrap_or_else(|e| {
                failed = Some(e);
                Ordering::Equal
            })
        });
        if let Some(e) = failed {
            return Err(e);
        }
        let arcs: Vec<ClosedArc> = if reduced.is_empty() {
            vec![ClosedArc { start: BoundaryPoint::Rational(BigRational::zero()), end: BoundaryPoint::Rational(c.clone()) }]
        } else {
            (0..reduced.len())
                .map(|i| {
                    let start = reduced[i].1.clone();
                    let end = if i + 1 < reduced.len() { reduced[i + 1].0.clone() } else { reduced[0].0.shifted(c) };
                    if start.line_cmp(&BoundaryPoint::Rational(c.clone()))? != Ordering::Less {
                        let back = -c.clone();
                        return Ok(ClosedArc { start: start.shifted(&back), end: end.shifted(&back) });
                    }
                    Ok(ClosedArc { start, end })
                })
                .collect::<Result<_>>()?
        };
        let counts = levels.map(|k| Ok((k, count_boxes(&arcs, c, periods, k)?))).collect::<Result<Vec<_>>>()?;
        Ok(DimensionReport::from_counts("birman-series", depth, periods, c, counts))
    }
}
