//! Gap records and a vector picture of one period of the horocycle.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cutting::{catalog::slope_of, Cutter, Gap};
use crate::error::{Error, Result};
use crate::exact::{floor_div, BoundaryPoint};

/// Drawing units per unit of the horocycle chart.
const UNITS: f64 = 200.0;
const HEIGHT: f64 = 60.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapRecord {
    pub index: usize,
    pub center: String,
    pub left: String,
    pub right: String,
    pub width: f64,
    pub shortcut: String,
    pub partner: String,
    pub trace: String,
    pub slope: (i64, i64),
    pub class: String,
}

fn difference(x: &BoundaryPoint, y: &BoundaryPoint) -> Result<f64> {
    let (xl, xh) = x.enclosure(96).ok_or(Error::NotRational)?;
    let (yl, yh) = y.enclosure(96).ok_or(Error::NotRational)?;
    Ok((((xl + xh) - (yl + yh)) / BigRational::from_integer(BigInt::from(2))).to_f64().unwrap_or(f64::NAN))
}

fn gaps_at_infinity(cutter: &Cutter, depth: usize) -> Result<Vec<Gap>> {
    if depth == 0 {
        return Ok(Vec::new());
    }
    let base = cutter.surface().parabolic_witness(&BoundaryPoint::Infinity)?;
    cutter.enumerate_gaps(&base, depth)
}

/// One record per gap at word-length budget `depth`, sorted by left end.
pub fn gap_records(cutter: &Cutter, depth: usize) -> Result<Vec<GapRecord>> {
    gaps_at_infinity(cutter, depth)?
        .iter()
        .enumerate()
        .map(|(index, g)| {
            Ok(GapRecord {
                index,
                center: g.q.point.to_string(),
                left: g.i_full.left.to_string(),
                right: g.i_full.right.to_string(),
                width: difference(&g.i_full.right, &g.i_full.left)?,
                shortcut: g.g_pq.word().to_string(),
                partner: g.g_qp.word().to_string(),
                trace: g.g_pq.matrix().abs_trace().to_string(),
                slope: slope_of(g.g_pq.word()),
                class: g.g_pq.word().conjugacy_key().to_string(),
            })
        })
        .collect()
}

/// SVG of one period starting at the right end of the first gap: one rectangle per gap,
/// colored by geodesic class, over the remaining set drawn in black.
pub fn render_gaps(cutter: &Cutter, depth: usize) -> Result<String> {
    let s = cutter.surface();
    let c = s.cusp_width();
    let cf = c.to_f64().unwrap_or(f64::NAN);
    let gaps = gaps_at_infinity(cutter, depth)?;
    let mut classes: BTreeMap<(BigInt, String), usize> = BTreeMap::new();
    for g in &gaps {
        classes.insert((g.g_pq.matrix().abs_trace(), g.g_pq.word().conjugacy_key().to_string()), 0);
    }
    for (i, v) in classes.values_mut().enumerate() {
        *v = i;
    }
    // gaps are open and pairwise disjoint, so no gap straddles a translate of a gap end
    let origin = match gaps.first() {
        Some(g) => g.i_full.right.clone(),
        None => BoundaryPoint::Rational(BigRational::from_integer(BigInt::from(0))),
    };
    let mut placed: Vec<(f64, f64, usize)> = Vec::with_capacity(gaps.len());
    for g in &gaps {
        let shift = floor_div(&g.i_full.left.shifted(&-origin_rational(&origin)?), c)?;
        let back = -(c * BigRational::from_integer(shift));
        let left = g.i_full.left.shifted(&back);
        let right = g.i_full.right.shifted(&back);
        if left.line_cmp(&origin)? == Ordering::Less {
            return Err(Error::Invariant("gap placed before the window".into()));
        }
        let x = difference(&left, &origin)?;
        let w = difference(&right, &left)?;
        let class = classes[&(g.g_pq.matrix().abs_trace(), g.g_pq.word().conjugacy_key().to_string())];
        placed.push((x, w, class));
    }
    placed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let width = cf * UNITS;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{HEIGHT:.0}" viewBox="0 0 {width:.9} {HEIGHT:.9}">"#
    );
    let _ = writeln!(out, "<!-- origin {} depth {} gaps {} -->", origin, depth, gaps.len());
    // remaining set: the complement of the gaps in the window
    let mut path = String::new();
    let mut at = 0.0;
    for (x, w, _) in &placed {
        if *x > at {
            let _ = write!(path, "M{:.9} {:.9}H{:.9}", at * UNITS, HEIGHT / 2.0, x * UNITS);
        }
        at = at.max(x + w);
    }
    if at < cf {
        let _ = write!(path, "M{:.9} {:.9}H{:.9}", at * UNITS, HEIGHT / 2.0, cf * UNITS);
    }
    let _ = writeln!(out, r#"<path d="{path}" stroke="black" stroke-width="{:.9}" fill="none"/>"#, HEIGHT);
    for (x, w, class) in &placed {
        let _ = writeln!(
            out,
            r#"<rect x="{:.9}" y="0" width="{:.9}" height="{HEIGHT:.0}" fill="{}"/>"#,
            x * UNITS,
            w * UNITS,
            PALETTE[class % PALETTE.len()]
        );
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

fn origin_rational(origin: &BoundaryPoint) -> Result<BigRational> {
    // a rational just below the origin keeps the shift computation exact
    let (lo, _) = origin.enclosure(128).ok_or(Error::NotRational)?;
    Ok(lo)
}

/// Drawn width of each gap in chart units, read back from an SVG produced by [`render_gaps`].
pub fn drawn_widths(svg: &str) -> Vec<f64> {
    svg.lines()
        .filter(|l| l.starts_with("<rect"))
        .filter_map(|l| {
            let rest = &l[l.find(" width=\"")? + 8..];
            rest[..rest.find('"')?].parse::<f64>().ok().map(|w| w / UNITS)
        })
        .collect()
}

