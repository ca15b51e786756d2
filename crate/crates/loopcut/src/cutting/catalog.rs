//! Gaps at the cusp at infinity, found by twisting simple arcs.
//!
//! Every simple arc from the cusp to itself is the image of one at an integer
//! foot under a product of the two Nielsen twists that fix the peripheral word,
//! and the twists act on the homology class of `g(∞, q)` by elementary
//! matrices. A search restricted to slopes of bounded norm therefore reaches
//! every gap whose shortcut has that slope, and the catalog checks that each
//! primitive slope shows up exactly twice per period.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;

use super::farey;
use super::gap::{Gap, Side};
use crate::error::{Error, Result};
use crate::exact::BoundaryPoint;
use crate::surface::{SurfaceGroup, Word};

/// Images of `a`, `b` under `a ↦ a, b ↦ ba`, its inverse, `a ↦ ab, b ↦ b`, and its inverse.
pub fn twist_images() -> [[Word; 2]; 4] {
    let w = |s: &str| -> Word { s.parse().expect("word") };
    [[w("a"), w("ba")], [w("a"), w("bA")], [w("ab"), w("b")], [w("aB"), w("b")]]
}

/// Homology class of `g(∞, q)` up to sign.
pub fn slope_of(word: &Word) -> (i64, i64) {
    let (x, y) = word.abelianization();
    if x < 0 || (x == 0 && y < 0) {
        (-x, -y)
    } else {
        (x, y)
    }
}

pub fn slope_norm(s: (i64, i64)) -> usize {
    (s.0.unsigned_abs() + s.1.unsigned_abs()) as usize
}

/// Primitive slopes of norm at most `n`, up to sign.
pub fn primitive_slopes(n: usize) -> Vec<(i64, i64)> {
    let n = n as i64;
    let mut out = Vec::new();
    for x in 0..=n {
        for y in -n..=n {
            if x + y.abs() > n || (x == 0 && y <= 0) {
                continue;
            }
            if x.gcd(&y) == 1 {
                out.push((x, y));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub gap: Gap,
    pub slope: (i64, i64),
}

/// Where a point of `[0, c)` falls among the catalogued gaps.
#[derive(Clone, Debug, PartialEq)]
pub enum Lookup {
    /// Inside gap `index` translated by `shift·c`.
    Inside { index: usize, shift: i64, side: Side },
    /// On a gap end point or a gap center.
    Boundary,
    Outside,
}

/// All gaps at `∞` whose shortcut has slope norm at most `norm`, one per center in `[0, c)`.
#[derive(Clone, Debug)]
pub struct Catalog {
    norm: usize,
    width: BigRational,
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn build(surface: &SurfaceGroup, norm: usize) -> Result<Catalog> {
        let width = surface.cusp_width().clone();
        let reduce = |x: &BigRational| farey::reduce_foot(x, &width);
        let mut found: BTreeMap<BigRational, CatalogEntry> = BTreeMap::new();
        let mut frontier: BTreeSet<BigRational> = BTreeSet::new();
        if norm > 0 {
            let c = surface.cusp_width_int();
            let mut k = BigInt::from(0);
            while k < c {
                let q = BigRational::from_integer(k.clone());
                if farey::self_crossings(surface, &q)? == 0 {
                    frontier.insert(q);
                }
                k += 1;
            }
        }
        let twists = twist_images();
        while !frontier.is_empty() {
            let built: Vec<Result<CatalogEntry>> = frontier
                .par_iter()
                .map(|q| {
                    let gap = Gap::in_chart(surface, q)?;
                    gap.verify(surface)?;
                    let slope = slope_of(gap.g_pq.word());
                    Ok(CatalogEntry { gap, slope })
                })
                .collect();
            let mut next = BTreeSet::new();
            for (q, entry) in frontier.iter().zip(built) {
                let entry = entry?;
                if slope_norm(entry.slope) > norm {
                    continue;
                }
                for images in &twists {
                    let w = entry.gap.g_pq.word().substitute(images);
                    if slope_norm(slope_of(&w)) > norm {
                        continue;
                    }
                    if let BoundaryPoint::Rational(t) = surface.evaluate(&w).apply_infinity() {
                        let t = reduce(&t);
                        if !found.contains_key(&t) && !frontier.contains(&t) {
                            next.insert(t);
                        }
                    }
                }
                found.insert(q.clone(), entry);
            }
            frontier = next;
        }
        let mut entries: Vec<CatalogEntry> = found.into_values().collect();
        entries.sort_by(|x, y| x.gap.i_full.left.line_cmp(&y.gap.i_full.left).unwrap_or(Ordering::Equal));
        let catalog = Catalog { norm, width, entries };
        catalog.certify()?;
        Ok(catalog)
    }

    /// Each primitive slope of norm at most `norm` appears for exactly two centers.
    fn certify(&self) -> Result<()> {
        let mut count: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for e in &self.entries {
            *count.entry(e.slope).or_default() += 1;
        }
        for s in primitive_slopes(self.norm) {
            match count.remove(&s) {
                Some(2) => {}
                n => {
                    return Err(Error::Invariant(format!(
                        "slope {s:?} has {} gap centers, expected 2",
                        n.unwrap_or(0)
                    )))
                }
            }
        }
        if let Some((s, _)) = count.into_iter().next() {
            return Err(Error::Invariant(format!("unexpected slope {s:?} in catalog")));
        }
        Ok(())
    }

    /// The sub-catalog of slopes with norm at most `norm`.
    pub fn restrict(&self, norm: usize) -> Catalog {
        let entries = self.entries.iter().filter(|e| slope_norm(e.slope) <= norm).cloned().collect();
        Catalog { norm: norm.min(self.norm), width: self.width.clone(), entries }
    }

    pub fn norm(&self) -> usize {
        self.norm
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Locates an exact point `x` of `[0, c)`.
    pub fn lookup(&self, x: &BoundaryPoint) -> Result<Lookup> {
        for shift in [0i64, 1, -1] {
            let y = x.shifted(&-(&self.width * BigInt::from(shift)));
            // last gap whose left end is at most y
            let (mut lo, mut hi) = (0usize, self.entries.len());
            while lo < hi {
                let mid = (lo + hi) / 2;
                if self.entries[mid].gap.i_full.left.line_cmp(&y)? != Ordering::Greater {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            if lo == 0 {
                continue;
            }
            let gap = &self.entries[lo - 1].gap;
            if gap.i_full.left == y || gap.i_full.right == y || gap.q.point == y {
                return Ok(Lookup::Boundary);
            }
            if gap.i_full.right.line_cmp(&y)? == Ordering::Greater {
                let side = if gap.q.point.line_cmp(&y)? == Ordering::Less { Side::Plus } else { Side::Minus };
                return Ok(Lookup::Inside { index: lo - 1, shift, side });
            }
        }
        Ok(Lookup::Outside)
    }

    /// Sum of gap widths divided by `c`.
    pub fn normalized_width(&self) -> f64 {
        let c: f64 = num_traits::ToPrimitive::to_f64(&self.width).unwrap_or(f64::NAN);
        self.entries.iter().filter_map(|e| e.gap.width()).sum::<f64>() / c
    }
}
