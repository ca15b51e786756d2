//! Farey triangles met by a cusp-to-cusp geodesic and the translates that cross it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{BoundaryPoint, MoebiusMap};
use crate::surface::{modular_character, SurfaceGroup};

/// Rotation of the triangle `(0, 1, ∞)`: `0 → 1 → ∞ → 0`.
fn rotation() -> MoebiusMap {
    MoebiusMap::from_i64(0, 1, -1, 1).expect("det 1")
}

/// Maps `k` with `k(0, 1, ∞)` equal to the Farey triangles touched by `[∞, q]`.
///
/// A non-integer `q` gives the triangles the vertical line crosses, from `∞`
/// downward. An integer `q` spans a Farey edge; its two adjacent triangles are
/// returned instead so edge crossings are still seen.
pub fn triangles_toward(q: &BigRational, limit: usize) -> Result<Vec<MoebiusMap>> {
    let m = q.floor().to_integer();
    let one = BigInt::one();
    if q.is_integer() {
        return Ok(vec![MoebiusMap::translation(&(&m - &one)), MoebiusMap::translation(&m)]);
    }
    let mut out = vec![MoebiusMap::translation(&m)];
    // Stern–Brocot descent between l = m/1 and r = (m+1)/1
    let (mut ln, mut ld) = (m.clone(), one.clone());
    let (mut rn, mut rd) = (&m + &one, one.clone());
    loop {
        let (mn, md) = (&ln + &rn, &ld + &rd);
        // triangle (l, mediant, r) is k(0, 1, ∞) for k = [[r, l], [r', l']]
        out.push(MoebiusMap::new(rn.clone(), ln.clone(), rd.clone(), ld.clone())?);
        if &mn * q.denom() == &md * q.numer() {
            return Ok(out);
        }
        if out.len() > limit {
            return Err(Error::DepthExceeded(limit));
        }
        if BigRational::new(mn.clone(), md.clone()) < *q {
            ln = mn;
            ld = md;
        } else {
            rn = mn;
            rd = md;
        }
    }
}

/// Lift `[∞, q]` of a cusp arc in the chart at infinity.
#[derive(Clone, Debug)]
pub struct ChartLine {
    pub foot: BigRational,
    triangles: Vec<MoebiusMap>,
    characters: Vec<u32>,
}

pub const TRIANGLE_LIMIT: usize = 1 << 16;

impl ChartLine {
    pub fn new(foot: BigRational) -> Result<ChartLine> {
        let triangles = triangles_toward(&foot, TRIANGLE_LIMIT)?;
        let characters = triangles.iter().map(modular_character).collect();
        Ok(ChartLine { foot, triangles, characters })
    }

    pub fn triangles(&self) -> &[MoebiusMap] {
        &self.triangles
    }
}

/// Squared height where the semicircle `[e1, e2]` meets the vertical line `Re = x`.
pub fn crossing_height2(x: &BigRational, u: &BigRational, v: &BigRational) -> BigRational {
    (x - u) * (v - x)
}

/// Whether `h·[∞, other]` crosses `[∞, line]` transversally.
pub fn crosses(line: &BigRational, h: &MoebiusMap, other: &BigRational) -> bool {
    let u = h.apply_infinity();
    let v = h.apply_rational(other);
    let (BoundaryPoint::Rational(u), BoundaryPoint::Rational(v)) = (u, v) else {
        return false;
    };
    if &u == line || &v == line {
        return false;
    }
    (&u < line) != (&v < line)
}

/// All group elements `h` for which `h·[∞, b.foot]` crosses `[∞, a.foot]`.
///
/// Any crossing point sits in the closure of a triangle touched by both lines,
/// so `h` maps a triangle of `b` onto a triangle of `a`, up to rotation.
pub fn crossing_lifts(surface: &SurfaceGroup, a: &ChartLine, b: &ChartLine) -> Vec<MoebiusMap> {
    let r = rotation();
    let rotations = [MoebiusMap::identity(), r.clone(), r.compose(&r)];
    let inverses: Vec<MoebiusMap> = b.triangles.iter().map(MoebiusMap::inverse).collect();
    let fast = surface.uses_modular_character();
    let mut found = BTreeSet::new();
    for (ka, ca) in a.triangles.iter().zip(&a.characters) {
        for (kb_inv, cb) in inverses.iter().zip(&b.characters) {
            for (s, rot) in rotations.iter().enumerate() {
                // χ(R) = 2, so the character decides the rotation before any product is formed
                if fast && !(ca + 2 * s as u32 + 6 - cb).is_multiple_of(6) {
                    continue;
                }
                let h = ka.compose(rot).compose(kb_inv);
                if !fast && !surface.is_member(&h) {
                    continue;
                }
                if crosses(&a.foot, &h, &b.foot) {
                    found.insert(h);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Self-intersection number of the arc whose chart lift is `[∞, q]`.
pub fn self_crossings(surface: &SurfaceGroup, q: &BigRational) -> Result<u64> {
    let line = ChartLine::new(q.clone())?;
    let lifts = crossing_lifts(surface, &line, &line);
    Ok(lifts.len() as u64 / 2)
}

/// Foot `f` of the reversed lift `[∞, f]`: `h⁻¹∞` for a witness `h` of `q`.
pub fn reversed_foot(surface: &SurfaceGroup, q: &BigRational) -> Result<BigRational> {
    let p = surface.parabolic_witness(&BoundaryPoint::Rational(q.clone()))?;
    match p.witness.matrix().inverse().apply_infinity() {
        BoundaryPoint::Rational(f) => Ok(f),
        _ => Err(Error::Invariant(format!("witness of {q} fixes infinity"))),
    }
}

/// Reduces `x` into `[0, c)`.
pub fn reduce_foot(x: &BigRational, c: &BigRational) -> BigRational {
    let q = (x / c).floor();
    x - c * q
}
