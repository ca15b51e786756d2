//! Systems of cusp arcs and the filling test.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cutting::farey::{self, ChartLine};
use crate::cutting::DerivedExpansion;
use crate::error::{Error, Result};
use crate::exact::{BoundaryPoint, MoebiusMap};
use crate::surface::{GroupElement, ParabolicPoint, SurfaceGroup};

/// A geodesic arc from the cusp to itself, stored by its lift `[∞, foot]`.
#[derive(Clone, Debug)]
pub struct CuspArc {
    /// Foot of the lift leaving `∞`, in `[0, c)`.
    pub foot: BigRational,
    /// Foot of the lift of the reversed arc, in `[0, c)`.
    pub reversed: BigRational,
    /// Element with `witness·∞ = foot`.
    pub witness: GroupElement,
    /// `witness⁻¹·∞ = reversed + end_shift·c`.
    pub end_shift: BigInt,
    pub self_intersections: u64,
}

impl CuspArc {
    /// The arc `λ(p, q)`.
    pub fn between(surface: &SurfaceGroup, p: &ParabolicPoint, q: &ParabolicPoint) -> Result<CuspArc> {
        match surface.inverse(&p.witness).matrix().apply(&q.point)? {
            BoundaryPoint::Rational(f) => CuspArc::from_foot(surface, &f),
            _ => Err(Error::SamePoint),
        }
    }

    /// The arc whose lift from `∞` ends at `foot`.
    pub fn from_foot(surface: &SurfaceGroup, foot: &BigRational) -> Result<CuspArc> {
        let c = surface.cusp_width();
        let foot = farey::reduce_foot(foot, c);
        let witness = surface.parabolic_witness(&BoundaryPoint::Rational(foot.clone()))?.witness;
        let back = match witness.matrix().inverse().apply_infinity() {
            BoundaryPoint::Rational(b) => b,
            _ => return Err(Error::Invariant(format!("witness of {foot} fixes infinity"))),
        };
        let (end_shift, reversed) = crate::exact::reduce_mod(&back, c);
        let self_intersections = farey::self_crossings(surface, &foot)?;
        Ok(CuspArc { foot, reversed, witness, end_shift, self_intersections })
    }

    /// Same unoriented arc.
    pub fn same_as(&self, other: &CuspArc) -> bool {
        self.foot == other.foot || self.foot == other.reversed
    }

    pub fn reverse(&self, surface: &SurfaceGroup) -> Result<CuspArc> {
        CuspArc::from_foot(surface, &self.reversed)
    }
}

/// A point where two arc passages meet, seen on the lift of `first` crossed by `lift·[∞, second]`.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub first: usize,
    pub second: usize,
    /// `lift` carries the second passage's point on its own lift to the first passage's point.
    pub lift: MoebiusMap,
    pub lift_element: GroupElement,
    /// End points `lift·∞`, `lift·foot(second)` of the crossing lift.
    pub ends: (BoundaryPoint, BoundaryPoint),
    /// Squared heights of the point on the first and the second lift.
    pub heights: (BigRational, BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// Boundary walks as edge indices, `+e` along the arc and `-e-1` against it.
    pub walks: Vec<Vec<i64>>,
    /// Homology class in the closed torus of each walk.
    pub classes: Vec<(i64, i64)>,
}

impl Census {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FillingVerdict {
    Filling(Census),
    /// Index of a face whose walk carries nonzero homology, when one exists.
    NotFilling { census: Census, witness_face: Option<usize> },
}

impl FillingVerdict {
    pub fn is_filling(&self) -> bool {
        matches!(self, FillingVerdict::Filling(_))
    }

    pub fn census(&self) -> &Census {
        match self {
            FillingVerdict::Filling(c) => c,
            FillingVerdict::NotFilling { census, .. } => census,
        }
    }
}

/// Distinct cusp arcs together with all their crossings.
#[derive(Clone, Debug)]
pub struct ArcSystem {
    pub arcs: Vec<CuspArc>,
    pub crossings: Vec<Crossing>,
    /// Arc ends around the cusp in increasing chart position: `(arc, is_end)`.
    pub cusp_order: Vec<(usize, bool)>,
}

/// Crossings between arcs `i ≤ j`; a self-crossing is listed once per pair `{h, h⁻¹}`.
fn crossings_between(surface: &SurfaceGroup, lines: &[ChartLine], i: usize, j: usize) -> Result<Vec<Crossing>> {
    let mut out = Vec::new();
    for h in farey::crossing_lifts(surface, &lines[i], &lines[j]) {
        let inv = h.inverse();
        if i == j && inv < h {
            continue;
        }
        let fi = &lines[i].foot;
        let fj = &lines[j].foot;
        let (BoundaryPoint::Rational(u), BoundaryPoint::Rational(v)) = (h.apply_infinity(), h.apply_rational(fj)) else {
            return Err(Error::Invariant("crossing lift through infinity".into()));
        };
        let (BoundaryPoint::Rational(u2), BoundaryPoint::Rational(v2)) = (inv.apply_infinity(), inv.apply_rational(fi))
        else {
            return Err(Error::Invariant("crossing lift through infinity".into()));
        };
        let heights = (farey::crossing_height2(fi, &u, &v), farey::crossing_height2(fj, &u2, &v2));
        let word = surface.contains(&h).ok_or_else(|| Error::Invariant(format!("crossing lift {h} not in group")))?;
        out.push(Crossing {
            first: i,
            second: j,
            lift_element: surface.element(word),
            lift: h,
            ends: (BoundaryPoint::Rational(u), BoundaryPoint::Rational(v)),
            heights,
        });
    }
    Ok(out)
}

/// Points where arcs meet, as strands `(arc, index along the arc)`.
struct Strands {
    /// Heights of the distinct points along each arc, from the cusp inwards.
    heights: Vec<Vec<BigRational>>,
    /// Strands of each point.
    points: Vec<Vec<(usize, usize)>>,
    /// Crossings at each point.
    crossings_at: Vec<Vec<usize>>,
}

impl Strands {
    fn index(&self, arc: usize, height: &BigRational) -> usize {
        self.heights[arc].binary_search_by(|h| height.cmp(h)).expect("height of a recorded crossing")
    }
}

impl ArcSystem {
    /// Builds the system, dropping repeated arcs (including reversed copies).
    pub fn new(surface: &SurfaceGroup, arcs: Vec<CuspArc>) -> Result<ArcSystem> {
        let mut distinct: Vec<CuspArc> = Vec::new();
        for a in arcs {
            if !distinct.iter().any(|b| b.same_as(&a)) {
                distinct.push(a);
            }
        }
        let lines: Vec<ChartLine> = distinct.iter().map(|a| ChartLine::new(a.foot.clone())).collect::<Result<_>>()?;
        let mut crossings = Vec::new();
        for i in 0..distinct.len() {
            for j in i..distinct.len() {
                crossings.extend(crossings_between(surface, &lines, i, j)?);
            }
        }
        let mut ends: Vec<(&BigRational, usize, bool)> = Vec::new();
        for (i, a) in distinct.iter().enumerate() {
            ends.push((&a.foot, i, false));
            ends.push((&a.reversed, i, true));
        }
        ends.sort();
        let cusp_order = ends.into_iter().map(|(_, i, e)| (i, e)).collect();
        Ok(ArcSystem { arcs: distinct, crossings, cusp_order })
    }

    /// Arcs `λ(p_{i−1}, p_i)` of the first `n` steps of a derived sequence.
    pub fn from_expansion(surface: &SurfaceGroup, e: &DerivedExpansion, n: usize) -> Result<ArcSystem> {
        let mut arcs = Vec::new();
        let mut previous = e.base.clone();
        for step in e.steps.iter().take(n) {
            arcs.push(CuspArc::between(surface, &previous, &step.point)?);
            previous = step.point.clone();
        }
        ArcSystem::new(surface, arcs)
    }

    /// Number of crossings between arcs `i` and `j` (self-crossings when equal).
    pub fn crossing_count(&self, i: usize, j: usize) -> usize {
        self.crossings
            .iter()
            .filter(|c| (c.first, c.second) == (i.min(j), i.max(j)))
            .count()
    }

    /// Groups crossings into points of the surface; three or more arcs may meet at one point.
    fn strands(&self) -> Result<Strands> {
        let mut heights: Vec<Vec<BigRational>> = vec![Vec::new(); self.arcs.len()];
        for c in &self.crossings {
            heights[c.first].push(c.heights.0.clone());
            heights[c.second].push(c.heights.1.clone());
        }
        for h in &mut heights {
            h.sort_by(|x, y| y.cmp(x));
            h.dedup();
        }
        let mut offset = Vec::with_capacity(heights.len());
        let mut total = 0;
        for h in &heights {
            offset.push(total);
            total += h.len();
        }
        let mut parent: Vec<usize> = (0..total).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut strands = Strands { heights, points: Vec::new(), crossings_at: Vec::new() };
        let ends: Vec<(usize, usize)> = self
            .crossings
            .iter()
            .map(|c| {
                (
                    offset[c.first] + strands.index(c.first, &c.heights.0),
                    offset[c.second] + strands.index(c.second, &c.heights.1),
                )
            })
            .collect();
        for &(x, y) in &ends {
            let (rx, ry) = (root(&mut parent, x), root(&mut parent, y));
            parent[rx.max(ry)] = rx.min(ry);
        }
        let mut point_of = vec![usize::MAX; total];
        for (i, h) in strands.heights.iter().enumerate() {
            for k in 0..h.len() {
                let r = root(&mut parent, offset[i] + k);
                if point_of[r] == usize::MAX {
                    point_of[r] = strands.points.len();
                    strands.points.push(Vec::new());
                    strands.crossings_at.push(Vec::new());
                }
                strands.points[point_of[r]].push((i, k));
            }
        }
        for (k, &(x, _)) in ends.iter().enumerate() {
            let r = root(&mut parent, x);
            strands.crossings_at[point_of[r]].push(k);
        }
        for (pts, cs) in strands.points.iter().zip(&strands.crossings_at) {
            let m = pts.len();
            if cs.len() != m * (m - 1) / 2 {
                return Err(Error::InconsistentRotation(format!("{m} strands meet in {} crossings", cs.len())));
            }
        }
        Ok(strands)
    }

    /// Compactifies the cusp to a vertex and counts faces of the resulting ribbon graph.
    ///
    /// Every face is a disc exactly when `V − E + F = 0`, the Euler characteristic of
    /// the closed torus. A face walk whose holonomy has nonzero homology bounds no disc.
    pub fn is_filling(&self, surface: &SurfaceGroup) -> Result<FillingVerdict> {
        let strands = self.strands()?;
        // edge e of arc i runs between consecutive points; darts 2e (tail) and 2e+1 (head)
        let mut first_edge = Vec::with_capacity(self.arcs.len());
        let mut edges = 0usize;
        for h in &strands.heights {
            first_edge.push(edges);
            edges += h.len() + 1;
        }
        let darts = 2 * edges;
        let mut rotate = vec![usize::MAX; darts];
        let mut step: Vec<GroupElement> = vec![surface.identity(); darts];
        for (pts, cs) in strands.points.iter().zip(&strands.crossings_at) {
            // frames carry each strand's own lift onto the lift through the point in the chart of `pts[0]`
            let (i0, k0) = pts[0];
            let mut frames: Vec<((usize, usize), GroupElement)> = vec![((i0, k0), surface.identity())];
            for &k in cs {
                let c = &self.crossings[k];
                let a = (c.first, strands.index(c.first, &c.heights.0));
                let b = (c.second, strands.index(c.second, &c.heights.1));
                if a == (i0, k0) {
                    frames.push((b, c.lift_element.clone()));
                } else if b == (i0, k0) {
                    frames.push((a, surface.inverse(&c.lift_element)));
                }
            }
            if frames.len() != pts.len() {
                return Err(Error::InconsistentRotation("strand missing from its point".into()));
            }
            let mut around: Vec<(BoundaryPoint, usize, &GroupElement)> = Vec::with_capacity(2 * pts.len());
            for ((i, k), f) in &frames {
                let m = f.matrix();
                around.push((m.apply_infinity(), 2 * (first_edge[*i] + k) + 1, f));
                around.push((m.apply_rational(&self.arcs[*i].foot), 2 * (first_edge[*i] + k + 1), f));
            }
            let mut failed = None;
            around.sort_by(|x, y| {
                x.0.line_cmp(&y.0).unwrap_or_else(|e| {
                    failed = Some(e);
                    Ordering::Equal
                })
            });
            if let Some(e) = failed {
                return Err(e);
            }
            if around.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::InconsistentRotation("two strands share an end point".into()));
            }
            for t in 0..around.len() {
                let (_, d, fd) = &around[t];
                let (_, e, fe) = &around[(t + 1) % around.len()];
                rotate[*d] = *e;
                step[*d] = surface.mul(&surface.inverse(fd), fe);
            }
        }
        // cusp: darts in increasing chart position, each with the frame placing it over ∞
        let frames: Vec<(usize, GroupElement)> = self
            .cusp_order
            .iter()
            .map(|&(i, is_end)| {
                if is_end {
                    let d = 2 * (first_edge[i] + strands.heights[i].len()) + 1;
                    let a = &self.arcs[i];
                    (d, surface.mul(&a.witness, &surface.cusp_translation(&a.end_shift)))
                } else {
                    (2 * first_edge[i], surface.identity())
                }
            })
            .collect();
        let wrap = surface.cusp_translation(&BigInt::from(1));
        for t in 0..frames.len() {
            let (d, frame) = &frames[t];
            let (e, next) = &frames[(t + 1) % frames.len()];
            rotate[*d] = *e;
            let mut inc = frame.clone();
            if t + 1 == frames.len() {
                inc = surface.mul(&inc, &wrap);
            }
            step[*d] = surface.mul(&inc, &surface.inverse(next));
        }
        if rotate.contains(&usize::MAX) {
            return Err(Error::InconsistentRotation("dart without a rotation".into()));
        }
        let mut seen = vec![false; darts];
        let mut walks = Vec::new();
        let mut classes = Vec::new();
        for start in 0..darts {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut holonomy = surface.identity();
            let mut d = start;
            loop {
                seen[d] = true;
                let e = d / 2;
                walk.push(if d % 2 == 0 { e as i64 } else { -(e as i64) - 1 });
                let other = d ^ 1;
                holonomy = surface.mul(&holonomy, &step[other]);
                d = rotate[other];
                if d == start {
                    break;
                }
                if seen[d] {
                    return Err(Error::InconsistentRotation("face walks overlap".into()));
                }
            }
            classes.push(holonomy.word().abelianization());
            walks.push(walk);
        }
        let census = Census { vertices: 1 + strands.points.len(), edges, faces: walks.len(), walks, classes };
        if census.euler() == 0 {
            Ok(FillingVerdict::Filling(census))
        } else {
            let witness_face = census.classes.iter().position(|&c| c != (0, 0));
            Ok(FillingVerdict::NotFilling { census, witness_face })
        }
    }
}
