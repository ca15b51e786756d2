//! Shortcut elements and the gap intervals they bound.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::farey;
use crate::error::{Error, Result};
use crate::exact::{cyclic_order, BoundaryPoint, CircleInterval, Orientation};
use crate::surface::{GroupElement, ParabolicPoint, SurfaceGroup};

/// How an exact endpoint arises from a group element.
#[derive(Clone, Debug, PartialEq)]
pub enum Origin {
    /// `h·∞`.
    Parabolic(GroupElement),
    /// Attracting fixed point of the element.
    Attracting(GroupElement),
    /// Repelling fixed point of the element.
    Repelling(GroupElement),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicPoint {
    pub point: BoundaryPoint,
    pub origin: Origin,
}

impl SymbolicPoint {
    pub fn parabolic(h: GroupElement) -> SymbolicPoint {
        SymbolicPoint { point: h.matrix().apply_infinity(), origin: Origin::Parabolic(h) }
    }

    pub fn attracting(g: GroupElement) -> Result<SymbolicPoint> {
        let (a, _) = g.matrix().axis()?;
        Ok(SymbolicPoint { point: a, origin: Origin::Attracting(g) })
    }

    pub fn repelling(g: GroupElement) -> Result<SymbolicPoint> {
        let (_, b) = g.matrix().axis()?;
        Ok(SymbolicPoint { point: b, origin: Origin::Repelling(g) })
    }

    /// Image under a group element: `t·h·∞` or the fixed point of `t g t⁻¹`.
    pub fn transport(&self, surface: &SurfaceGroup, t: &GroupElement) -> Result<SymbolicPoint> {
        let origin = match &self.origin {
            Origin::Parabolic(h) => Origin::Parabolic(surface.mul(t, h)),
            Origin::Attracting(g) => Origin::Attracting(surface.conjugate(g, t)),
            Origin::Repelling(g) => Origin::Repelling(surface.conjugate(g, t)),
        };
        Ok(SymbolicPoint { point: t.matrix().apply(&self.point)?, origin })
    }

    /// Rebuilds the point from its origin after the element was replaced by `f(element)`.
    pub fn rebuild(&self, f: impl Fn(&GroupElement) -> GroupElement) -> Result<SymbolicPoint> {
        match &self.origin {
            Origin::Parabolic(h) => Ok(SymbolicPoint::parabolic(f(h))),
            Origin::Attracting(g) => SymbolicPoint::attracting(f(g)),
            Origin::Repelling(g) => SymbolicPoint::repelling(f(g)),
        }
    }

    pub fn describe(&self) -> String {
        match &self.origin {
            Origin::Parabolic(h) => format!("parabolic:{}", h.word()),
            Origin::Attracting(g) => format!("attracting:{}", g.word()),
            Origin::Repelling(g) => format!("repelling:{}", g.word()),
        }
    }
}

/// Open arc with symbolic end points.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicInterval {
    pub left: SymbolicPoint,
    pub right: SymbolicPoint,
}

impl SymbolicInterval {
    pub fn interval(&self) -> CircleInterval {
        CircleInterval { left: self.left.point.clone(), right: self.right.point.clone() }
    }

    pub fn transport(&self, surface: &SurfaceGroup, t: &GroupElement) -> Result<SymbolicInterval> {
        Ok(SymbolicInterval { left: self.left.transport(surface, t)?, right: self.right.transport(surface, t)? })
    }

    /// Component containing `x` of the intersection with `other`.
    pub fn meet_at(&self, other: &SymbolicInterval, x: &BoundaryPoint) -> Result<SymbolicInterval> {
        let left = if other.left.point == self.left.point
            || cyclic_order(&self.left.point, &other.left.point, x)? == Orientation::Positive
        {
            other.left.clone()
        } else {
            self.left.clone()
        };
        let right = if other.right.point == self.right.point
            || cyclic_order(x, &other.right.point, &self.right.point)? == Orientation::Positive
        {
            other.right.clone()
        } else {
            self.right.clone()
        };
        Ok(SymbolicInterval { left, right })
    }
}

impl fmt::Display for SymbolicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left.point, self.right.point)
    }
}

/// Which side of `q` a point falls on inside `I(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> i8 {
        match self {
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }

    pub fn flipped(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+",
            Side::Minus => "-",
        })
    }
}

/// The gap `I(p, q) = I⁻ ∪ {q} ∪ I⁺` with its shortcut elements.
#[derive(Clone, Debug)]
pub struct Gap {
    pub p: ParabolicPoint,
    pub q: ParabolicPoint,
    pub g_pq: GroupElement,
    pub g_qp: GroupElement,
    pub a_pq: BoundaryPoint,
    pub b_pq: BoundaryPoint,
    pub a_qp: BoundaryPoint,
    pub b_qp: BoundaryPoint,
    pub i_plus: CircleInterval,
    pub i_minus: CircleInterval,
    pub i_full: CircleInterval,
}

/// `g(∞, q)` and `g(q, ∞)` in the chart at infinity, without the simplicity check.
///
/// Candidates are `h·θⁿ` for a witness `h` of `q`; the one whose foot
/// `g⁻¹(∞)` lands in `(q, q + c)` is selected.
pub fn chart_shortcuts(surface: &SurfaceGroup, q: &BigRational) -> Result<(GroupElement, GroupElement)> {
    let witness = surface.parabolic_witness(&BoundaryPoint::Rational(q.clone()))?.witness;
    let foot = match witness.matrix().inverse().apply_infinity() {
        BoundaryPoint::Rational(f) => f,
        _ => return Err(Error::Invariant(format!("witness of {q} fixes infinity"))),
    };
    let c = surface.cusp_width();
    let n = ((q - &foot) / c).floor().to_integer() + BigInt::from(1);
    let landed = &foot + c * BigRational::from_integer(n.clone());
    if landed >= q + c {
        return Err(Error::Invariant(format!("foot of {q} is a translate of q")));
    }
    // foot of h·t is t⁻¹(foot), so t translates by −n·c
    let g_pq = surface.mul(&witness, &surface.cusp_translation(&-n));
    let g_qp = surface.mul(surface.theta_infinity(), &surface.inverse(&g_pq));
    Ok((g_pq, g_qp))
}

impl Gap {
    /// Gap at `(∞, q)` built from the shortcut pair; checked by `verify`.
    pub fn in_chart(surface: &SurfaceGroup, q: &BigRational) -> Result<Gap> {
        let (g_pq, g_qp) = chart_shortcuts(surface, q)?;
        let p = ParabolicPoint { point: BoundaryPoint::Infinity, witness: surface.identity() };
        let qp = ParabolicPoint { point: BoundaryPoint::Rational(q.clone()), witness: g_pq.clone() };
        Gap::assemble(p, qp, g_pq, g_qp)
    }

    fn assemble(p: ParabolicPoint, q: ParabolicPoint, g_pq: GroupElement, g_qp: GroupElement) -> Result<Gap> {
        let (a_pq, b_pq) = g_pq.matrix().axis()?;
        let (a_qp, b_qp) = g_qp.matrix().axis()?;
        let i_plus = CircleInterval { left: q.point.clone(), right: a_pq.clone() };
        let i_minus = CircleInterval { left: b_qp.clone(), right: q.point.clone() };
        let i_full = CircleInterval { left: b_qp.clone(), right: a_pq.clone() };
        Ok(Gap { p, q, g_pq, g_qp, a_pq, b_pq, a_qp, b_qp, i_plus, i_minus, i_full })
    }

    /// Image of the gap under `t`: points moved by `t`, elements conjugated.
    pub fn transport(&self, surface: &SurfaceGroup, t: &GroupElement) -> Result<Gap> {
        let p = surface.translate_point(t, &self.p);
        let q = surface.translate_point(t, &self.q);
        Gap::assemble(p, q, surface.conjugate(&self.g_pq, t), surface.conjugate(&self.g_qp, t))
    }

    pub fn side(&self, side: Side) -> &CircleInterval {
        match side {
            Side::Plus => &self.i_plus,
            Side::Minus => &self.i_minus,
        }
    }

    /// `I⁺ = (q, a(p,q))` or `I⁻ = (b(q,p), q)` with symbolic ends.
    pub fn symbolic_side(&self, side: Side) -> Result<SymbolicInterval> {
        let q = SymbolicPoint { point: self.q.point.clone(), origin: Origin::Parabolic(self.q.witness.clone()) };
        Ok(match side {
            Side::Plus => SymbolicInterval { left: q, right: SymbolicPoint::attracting(self.g_pq.clone())? },
            Side::Minus => SymbolicInterval { left: SymbolicPoint::repelling(self.g_qp.clone())?, right: q },
        })
    }

    /// The element taken by a derived sequence on this side: `g(p,q)` or `g(q,p)⁻¹`.
    pub fn step_element(&self, surface: &SurfaceGroup, side: Side) -> GroupElement {
        match side {
            Side::Plus => self.g_pq.clone(),
            Side::Minus => surface.inverse(&self.g_qp),
        }
    }

    /// Checks every defining property exactly.
    pub fn verify(&self, surface: &SurfaceGroup) -> Result<()> {
        let fail = |what: &str| Err(Error::Invariant(format!("gap ({}, {}): {what}", self.p.point, self.q.point)));
        if self.g_pq.matrix().apply(&self.p.point)? != self.q.point {
            return fail("g(p,q) p != q");
        }
        if self.g_qp.matrix().apply(&self.q.point)? != self.p.point {
            return fail("g(q,p) q != p");
        }
        let theta = surface.theta(&self.p);
        if surface.mul(&self.g_qp, &self.g_pq).matrix() != theta.matrix() {
            return fail("g(q,p) g(p,q) != theta(p)");
        }
        let six = [&self.p.point, &self.a_qp, &self.b_qp, &self.q.point, &self.a_pq, &self.b_pq];
        for i in 1..5 {
            if cyclic_order(six[0], six[i], six[i + 1])? != Orientation::Positive {
                return fail("six points out of cyclic order");
            }
        }
        // [p, θ(p)q] must not be linked with the axis of g(p,q)
        let tq = theta.matrix().apply(&self.q.point)?;
        let side_p = cyclic_order(&self.b_pq, &self.p.point, &self.a_pq)?;
        let side_tq = cyclic_order(&self.b_pq, &tq, &self.a_pq)?;
        if side_p == Orientation::Degenerate || side_tq == Orientation::Degenerate || side_p != side_tq {
            return fail("axis of g(p,q) meets [p, theta(p) q]");
        }
        for n in [-3i64, -2, -1, 1, 2, 3] {
            let tn = surface.pow(&theta, n);
            let moved = CircleInterval {
                left: tn.matrix().apply(&self.i_full.left)?,
                right: tn.matrix().apply(&self.i_full.right)?,
            };
            if !self.i_full.disjoint(&moved)? {
                return fail("gap meets a theta translate");
            }
        }
        Ok(())
    }

    /// Euclidean length of `I(p,q)`; `None` unless `p = ∞`.
    pub fn width(&self) -> Option<f64> {
        if !self.p.point.is_infinity() {
            return None;
        }
        let (lo, _) = self.a_pq.enclosure(96)?;
        let (_, hi) = self.b_qp.enclosure(96)?;
        num_traits::ToPrimitive::to_f64(&(lo - hi))
    }
}

/// `(g(p,q), g(q,p))` for a simple pair, checked exactly.
pub fn compute_g(surface: &SurfaceGroup, p: &ParabolicPoint, q: &ParabolicPoint) -> Result<(GroupElement, GroupElement)> {
    let gap = gap(surface, p, q)?;
    Ok((gap.g_pq, gap.g_qp))
}

/// `I(p, q)` for a simple pair `(p, q)`.
pub fn gap(surface: &SurfaceGroup, p: &ParabolicPoint, q: &ParabolicPoint) -> Result<Gap> {
    let chart_q = surface.inverse(&p.witness).matrix().apply(&q.point)?;
    let BoundaryPoint::Rational(chart_q) = chart_q else {
        return Err(Error::SamePoint);
    };
    let nu = farey::self_crossings(surface, &chart_q)?;
    if nu != 0 {
        return Err(Error::NotInDelta(nu));
    }
    let local = Gap::in_chart(surface, &chart_q)?;
    let out = local.transport(surface, &p.witness)?;
    out.verify(surface)?;
    Ok(out)
}
