//! Certificates that a neighbourhood of a filling point is moved off itself.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::arcs::{ArcSystem, Census, FillingVerdict};
use super::mapping::{enumerate_classes, MappingClass, MappingClassRecord};
use crate::cutting::{Cutter, DerivedExpansion, Origin, SymbolicInterval, SymbolicPoint};
use crate::error::{Error, Result};
use crate::exact::{BoundaryPoint, CircleInterval};
use crate::surface::{SurfaceGroup, Word};

#[derive(Clone, Debug)]
pub struct WanderingCertificate {
    pub x: BoundaryPoint,
    pub prefix: usize,
    pub arcs: ArcSystem,
    pub census: Census,
    pub neighborhood: SymbolicInterval,
    pub checked: Vec<(MappingClass, bool)>,
}

/// An exact end point stored by how it arises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndRecord {
    pub kind: String,
    pub word: String,
    pub value: String,
}

/// Everything needed to re-check a certificate without recomputing expansions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub surface: String,
    pub x: String,
    pub prefix: usize,
    pub arc_feet: Vec<String>,
    pub census: Census,
    pub left: EndRecord,
    pub right: EndRecord,
    pub classes: Vec<(MappingClassRecord, bool)>,
}

/// Whether `v` meets no translate `u + m·c`; `u` and `v` avoid `∞`.
pub fn disjoint_from_translates(surface: &SurfaceGroup, u: &CircleInterval, v: &CircleInterval) -> Result<bool> {
    let c = surface.cusp_width();
    let bounds = |i: &CircleInterval| -> Result<(BigRational, BigRational)> {
        let lo = i.left.enclosure(64).ok_or(Error::Invariant("arc through infinity".into()))?.0;
        let hi = i.right.enclosure(64).ok_or(Error::Invariant("arc through infinity".into()))?.1;
        if lo >= hi {
            return Err(Error::Invariant(format!("arc {i} wraps through infinity")));
        }
        Ok((lo, hi))
    };
    let (ul, uh) = bounds(u)?;
    let (vl, vh) = bounds(v)?;
    // only shifts with v.lo < u.hi + m·c and u.lo + m·c < v.hi can overlap
    let first = ((&vl - &uh) / c).floor().to_integer();
    let last = ((&vh - &ul) / c).ceil().to_integer();
    let mut m = first;
    while m <= last {
        let shift = c * BigRational::from_integer(m.clone());
        let moved = CircleInterval { left: u.left.shifted(&shift), right: u.right.shifted(&shift) };
        if !moved.disjoint(v)? {
            return Ok(false);
        }
        m += BigInt::from(1);
    }
    Ok(true)
}

fn end_record(p: &SymbolicPoint) -> EndRecord {
    let (kind, word) = match &p.origin {
        Origin::Parabolic(h) => ("parabolic", h.word().to_string()),
        Origin::Attracting(g) => ("attracting", g.word().to_string()),
        Origin::Repelling(g) => ("repelling", g.word().to_string()),
    };
    EndRecord { kind: kind.into(), word, value: p.point.to_string() }
}

fn end_from_record(surface: &SurfaceGroup, r: &EndRecord) -> Result<SymbolicPoint> {
    let g = surface.element(r.word.parse::<Word>()?);
    let p = match r.kind.as_str() {
        "parabolic" => SymbolicPoint::parabolic(g),
        "attracting" => SymbolicPoint::attracting(g)?,
        "repelling" => SymbolicPoint::repelling(g)?,
        k => return Err(Error::Parse(format!("unknown end kind {k}"))),
    };
    if p.point.to_string() != r.value {
        return Err(Error::Parse(format!("end {} does not evaluate to {}", r.word, r.value)));
    }
    Ok(p)
}

/// Smallest prefix of the derived sequence whose arcs fill, with its census.
pub fn filling_prefix(surface: &SurfaceGroup, e: &DerivedExpansion) -> Result<Option<(usize, ArcSystem, Census)>> {
    for n in 1..=e.len() {
        let arcs = ArcSystem::from_expansion(surface, e, n)?;
        if let FillingVerdict::Filling(census) = arcs.is_filling(surface)? {
            return Ok(Some((n, arcs, census)));
        }
    }
    Ok(None)
}

/// Checks `φU ∩ (U + m·c) = ∅` for every class, in parallel, keeping the given order.
pub fn check_classes(surface: &SurfaceGroup, u: &SymbolicInterval, classes: &[MappingClass]) -> Result<Vec<bool>> {
    let base = u.interval();
    classes
        .par_iter()
        .map(|phi| {
            let image = phi.apply_interval(surface, u)?.interval();
            disjoint_from_translates(surface, &base, &image)
        })
        .collect()
}

impl Cutter {
    /// Wandering certificate for `x` against twist classes of length at most `bound`.
    pub fn wandering_certificate(&self, x: &BoundaryPoint, depth: usize, bound: usize) -> Result<WanderingCertificate> {
        let s = self.surface();
        let e = match self.derived_expansion(x, depth) {
            Ok(e) => e,
            Err(Error::StepBudgetExceeded { .. }) => return Err(Error::NotFillingWithinDepth(depth)),
            Err(err) => return Err(err),
        };
        let Some((prefix, arcs, census)) = filling_prefix(s, &e)? else {
            return Err(Error::NotFillingWithinDepth(depth));
        };
        let neighborhood = e.agreement_neighborhood(prefix)?;
        let classes = enumerate_classes(s, bound)?;
        let verdicts = check_classes(s, &neighborhood, &classes)?;
        if let Some(k) = verdicts.iter().position(|&ok| !ok) {
            return Err(Error::DisjointnessFailure(classes[k].to_string()));
        }
        let checked = classes.into_iter().zip(verdicts).collect();
        Ok(WanderingCertificate { x: x.clone(), prefix, arcs, census, neighborhood, checked })
    }
}

impl WanderingCertificate {
    pub fn record(&self, surface: &SurfaceGroup) -> CertificateRecord {
        CertificateRecord {
            surface: surface.name().to_string(),
            x: self.x.to_string(),
            prefix: self.prefix,
            arc_feet: self.arcs.arcs.iter().map(|a| a.foot.to_string()).collect(),
            census: self.census.clone(),
            left: end_record(&self.neighborhood.left),
            right: end_record(&self.neighborhood.right),
            classes: self.checked.iter().map(|(m, ok)| (m.record(), *ok)).collect(),
        }
    }
}

impl CertificateRecord {
    /// Re-checks the record from its exact data: filling census, `x ∈ U`, and every class verdict.
    pub fn verify(&self, surface: &SurfaceGroup) -> Result<()> {
        let bad = |m: &str| Err(Error::Invariant(format!("certificate for {}: {m}", self.x)));
        let arcs = self
            .arc_feet
            .iter()
            .map(|f| {
                let f: BigRational = f.parse().map_err(|_| Error::Parse(f.clone()))?;
                super::arcs::CuspArc::from_foot(surface, &f)
            })
            .collect::<Result<Vec<_>>>()?;
        match ArcSystem::new(surface, arcs)?.is_filling(surface)? {
            FillingVerdict::Filling(c) if c == self.census => {}
            _ => return bad("arc census does not reproduce"),
        }
        let u = SymbolicInterval { left: end_from_record(surface, &self.left)?, right: end_from_record(surface, &self.right)? };
        let x: BoundaryPoint = self.x.parse()?;
        if !u.interval().holds(&x)? {
            return bad("point outside its neighbourhood");
        }
        let classes = self
            .classes
            .iter()
            .map(|(r, _)| MappingClass::from_record(surface, r))
            .collect::<Result<Vec<_>>>()?;
        let verdicts = check_classes(surface, &u, &classes)?;
        if verdicts.iter().zip(&self.classes).any(|(v, (_, ok))| v != ok) {
            return bad("a class verdict does not reproduce");
        }
        if verdicts.iter().any(|ok| !ok) {
            return bad("a class moves the neighbourhood onto itself");
        }
        Ok(())
    }
}
