//! Automorphisms of the free group that fix the cusp, acting on words and on the circle.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::arcs::CuspArc;
use crate::cutting::catalog::twist_images;
use crate::cutting::{Cutter, SymbolicInterval, SymbolicPoint};
use crate::error::{Error, Result};
use crate::exact::{BoundaryPoint, IntervalReal};
use crate::surface::{GroupElement, Letter, SurfaceGroup, Word};

/// An automorphism with `φ(K) = K^{±1}` exactly, stored with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MappingClass {
    images: [Word; 2],
    inverse: [Word; 2],
    orientation: i8,
}

/// Serializable form: the images of `a` and `b` and the orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingClassRecord {
    pub a: String,
    pub b: String,
    pub orientation: i8,
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a->{}, b->{}", self.images[0], self.images[1])
    }
}

fn generators() -> [Word; 2] {
    [Word::letter(Letter::A), Word::letter(Letter::B)]
}

/// Rewrites `images` to a basis `(a^±, b^±)` by length-reducing Nielsen moves.
///
/// Returns the inverse automorphism when the images form a basis.
fn nielsen_inverse(images: &[Word; 2]) -> Option<[Word; 2]> {
    // track = the word in (a, b) that each current entry equals, as a function of the original pair
    let mut cur = images.clone();
    let mut track = generators();
    let limit = 4 * (images[0].len() + images[1].len()) + 8;
    for _ in 0..limit {
        let total = cur[0].len() + cur[1].len();
        if cur[0].len() == 1 && cur[1].len() == 1 && cur[0].letters()[0].generator() != cur[1].letters()[0].generator() {
            // cur[k] = track[k](φ(a), φ(b)) is a generator letter, so φ⁻¹ is read off by inverting
            let mut inv = [Word::empty(), Word::empty()];
            for k in 0..2 {
                let l = cur[k].letters()[0];
                let w = if l.is_inverse() { track[k].inverse() } else { track[k].clone() };
                inv[l.generator()] = w;
            }
            return Some(inv);
        }
        let mut best: Option<(usize, [Word; 2], [Word; 2])> = None;
        for k in 0..2 {
            let o = 1 - k;
            for e in [1i64, -1] {
                let y = cur[o].pow(e);
                let ty = track[o].pow(e);
                for right in [true, false] {
                    let (nx, nt) = if right {
                        (cur[k].mul(&y), track[k].mul(&ty))
                    } else {
                        (y.mul(&cur[k]), ty.mul(&track[k]))
                    };
                    let len = nx.len() + cur[o].len();
                    if len < total && best.as_ref().is_none_or(|b| len < b.0) {
                        let mut c = cur.clone();
                        let mut t = track.clone();
                        c[k] = nx;
                        t[k] = nt;
                        best = Some((len, c, t));
                    }
                }
            }
        }
        let (_, c, t) = best?;
        cur = c;
        track = t;
    }
    None
}

impl MappingClass {
    pub fn identity() -> MappingClass {
        MappingClass { images: generators(), inverse: generators(), orientation: 1 }
    }

    /// Normalizes raw images so that the peripheral word is fixed up to inversion.
    pub fn normalize(surface: &SurfaceGroup, images: [Word; 2]) -> Result<MappingClass> {
        let inverse = nielsen_inverse(&images)
            .ok_or_else(|| Error::NotAnAutomorphism(format!("a->{}, b->{}", images[0], images[1])))?;
        let k = surface.peripheral_word();
        let image = k.substitute(&images);
        let (outer, core) = image.cyclic_split();
        let n = k.len();
        for (orientation, target) in [(1i8, k.clone()), (-1, k.inverse())] {
            if core.len() != n {
                break;
            }
            for shift in 0..n {
                // core = P⁻¹ target P for P the first `shift` letters of target
                let prefix = Word::from_letters(target.letters()[..shift].iter().copied());
                if core == prefix.inverse().conjugate(&target) {
                    let u = outer.mul(&prefix.inverse());
                    let u_inv = u.inverse();
                    let fixed = [0, 1].map(|i| u_inv.mul(&images[i]).mul(&u));
                    // inverse of y ↦ u⁻¹φ(y)u is y ↦ v φ⁻¹(y) v⁻¹ with v = φ⁻¹(u)
                    let v = u.substitute(&inverse);
                    let back = inverse.clone().map(|w| v.mul(&w).mul(&v.inverse()));
                    let class = MappingClass { images: fixed, inverse: back, orientation };
                    class.check(surface)?;
                    return Ok(class);
                }
            }
        }
        Err(Error::PeripheralNotPreserved)
    }

    fn check(&self, surface: &SurfaceGroup) -> Result<()> {
        let k = surface.peripheral_word();
        let want = if self.orientation == 1 { k.clone() } else { k.inverse() };
        if k.substitute(&self.images) != want {
            return Err(Error::PeripheralNotPreserved);
        }
        for (i, g) in generators().iter().enumerate() {
            if g.substitute(&self.images).substitute(&self.inverse) != generators()[i]
                || g.substitute(&self.inverse).substitute(&self.images) != generators()[i]
            {
                return Err(Error::NotAnAutomorphism(self.to_string()));
            }
        }
        Ok(())
    }

    pub fn images(&self) -> &[Word; 2] {
        &self.images
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn is_identity(&self) -> bool {
        self.images == generators()
    }

    pub fn inverse(&self) -> MappingClass {
        MappingClass { images: self.inverse.clone(), inverse: self.images.clone(), orientation: self.orientation }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MappingClass) -> MappingClass {
        MappingClass {
            images: other.images.clone().map(|w| w.substitute(&self.images)),
            inverse: self.inverse.clone().map(|w| w.substitute(&other.inverse)),
            orientation: self.orientation * other.orientation,
        }
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    pub fn apply_element(&self, surface: &SurfaceGroup, g: &GroupElement) -> GroupElement {
        surface.element(self.apply_word(g.word()))
    }

    /// Image of a symbolic point, recomputed from its origin.
    pub fn apply_symbolic(&self, surface: &SurfaceGroup, p: &SymbolicPoint) -> Result<SymbolicPoint> {
        p.rebuild(|g| self.apply_element(surface, g))
    }

    /// Image of a cusp arc: the lift `[∞, h·∞]` goes to `[∞, φ(h)·∞]`.
    pub fn apply_arc(&self, surface: &SurfaceGroup, arc: &CuspArc) -> Result<CuspArc> {
        match self.apply_element(surface, &arc.witness).matrix().apply_infinity() {
            BoundaryPoint::Rational(f) => CuspArc::from_foot(surface, &f),
            _ => Err(Error::Invariant(format!("{self} sends an arc onto the cusp"))),
        }
    }

    /// Image of an open arc; orientation reversal swaps the ends.
    pub fn apply_interval(&self, surface: &SurfaceGroup, u: &SymbolicInterval) -> Result<SymbolicInterval> {
        let l = self.apply_symbolic(surface, &u.left)?;
        let r = self.apply_symbolic(surface, &u.right)?;
        Ok(if self.orientation == 1 { SymbolicInterval { left: l, right: r } } else { SymbolicInterval { left: r, right: l } })
    }

    /// Image of a boundary point.
    ///
    /// A cusp point `h·∞` goes to `φ(h)·∞` exactly. Any other point is enclosed by the
    /// image of its agreement neighbourhood after `depth` derived steps.
    pub fn apply_point(&self, cutter: &Cutter, x: &BoundaryPoint, depth: usize) -> Result<BoundaryPoint> {
        let s = cutter.surface();
        if x.is_parabolic_candidate() {
            let h = s.parabolic_witness(x)?.witness;
            return Ok(self.apply_element(s, &h).matrix().apply_infinity());
        }
        let e = cutter.derived_expansion(x, depth)?;
        if e.len() < depth {
            return Err(Error::InsufficientDepth(format!("{x} has {} derived steps", e.len())));
        }
        let u = self.apply_interval(s, &e.agreement_neighborhood(depth)?)?;
        let lo = u.left.point.enclosure(64).ok_or_else(|| Error::InsufficientDepth(x.to_string()))?.0;
        let hi = u.right.point.enclosure(64).ok_or_else(|| Error::InsufficientDepth(x.to_string()))?.1;
        if lo >= hi {
            return Err(Error::InsufficientDepth(format!("image of {x} wraps through infinity")));
        }
        Ok(BoundaryPoint::Interval(IntervalReal::fixed(lo, hi)))
    }

    pub fn record(&self) -> MappingClassRecord {
        MappingClassRecord { a: self.images[0].to_string(), b: self.images[1].to_string(), orientation: self.orientation }
    }

    pub fn from_record(surface: &SurfaceGroup, r: &MappingClassRecord) -> Result<MappingClass> {
        let a: Word = r.a.parse()?;
        let b: Word = r.b.parse()?;
        let class = MappingClass::normalize(surface, [a, b])?;
        if class.orientation != r.orientation {
            return Err(Error::Parse(format!("orientation of {} is {}", class, class.orientation)));
        }
        Ok(class)
    }

    /// Representative modulo conjugation by powers of the peripheral word, shortest first.
    pub fn reduced_modulo_cusp(&self, surface: &SurfaceGroup, range: i64) -> MappingClass {
        let k = surface.peripheral_word();
        (-range..=range)
            .map(|n| {
                let c = k.pow(n);
                let ci = c.inverse();
                MappingClass {
                    images: self.images.clone().map(|w| c.mul(&w).mul(&ci)),
                    inverse: self.inverse.clone().map(|w| c.mul(&w).mul(&ci)),
                    orientation: self.orientation,
                }
            })
            .min_by_key(|m| (m.images[0].len() + m.images[1].len(), m.images.clone()))
            .expect("non-empty range")
    }
}

/// The four twists `a↦a, b↦ba`, its inverse, `a↦ab, b↦b`, and its inverse.
pub fn twist_generators(surface: &SurfaceGroup) -> Result<[MappingClass; 4]> {
    let t = twist_images();
    Ok([
        MappingClass::normalize(surface, t[0].clone())?,
        MappingClass::normalize(surface, t[1].clone())?,
        MappingClass::normalize(surface, t[2].clone())?,
        MappingClass::normalize(surface, t[3].clone())?,
    ])
}

/// Nontrivial classes given by twist words of length at most `bound`, one per class modulo the cusp.
///
/// Classes are listed in order of first appearance, words taken by length and then by
/// generator index.
pub fn enumerate_classes(surface: &SurfaceGroup, bound: usize) -> Result<Vec<MappingClass>> {
    let gens = twist_generators(surface)?;
    let range = 2 * bound as i64 + 2;
    let mut seen: BTreeMap<[Word; 2], ()> = BTreeMap::new();
    let mut out = Vec::new();
    let identity = MappingClass::identity();
    seen.insert(identity.images.clone(), ());
    // layer of (class, last generator index) for reduced words
    let mut layer: Vec<(MappingClass, Option<usize>)> = vec![(identity, None)];
    for _ in 0..bound {
        let mut next = Vec::new();
        for (m, last) in &layer {
            for (g, gen) in gens.iter().enumerate() {
                if last.is_some_and(|l| l ^ 1 == g) {
                    continue;
                }
                let c = m.compose(gen).reduced_modulo_cusp(surface, range);
                if seen.insert(c.images.clone(), ()).is_none() {
                    out.push(c.clone());
                }
                next.push((c, Some(g)));
            }
        }
        layer = next;
    }
    Ok(out)
}
