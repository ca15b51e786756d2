//! Integer Möbius maps, identified with their negatives.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::point::{BoundaryPoint, IntervalReal, Refiner};
use super::surd::Surd;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Identity,
    Parabolic,
    Hyperbolic,
    Elliptic,
}

/// Boundary fixed points of a non-elliptic, non-identity map.
#[derive(Clone, Debug, PartialEq)]
pub enum FixedPoints {
    Parabolic(BoundaryPoint),
    Hyperbolic { attracting: BoundaryPoint, repelling: BoundaryPoint },
}

/// `z ↦ (az + b)/(cz + d)` with `ad − bc = 1`, stored with the first nonzero entry positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoebiusMap {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl MoebiusMap {
    fn canonical(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let lead = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).map(|x| x.is_negative());
        if lead == Some(true) {
            MoebiusMap { a: -a, b: -b, c: -c, d: -d }
        } else {
            MoebiusMap { a, b, c, d }
        }
    }

    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::Determinant(det));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        MoebiusMap { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    /// `z ↦ z + k`.
    pub fn translation(k: &BigInt) -> Self {
        MoebiusMap { a: BigInt::one(), b: k.clone(), c: BigInt::zero(), d: BigInt::one() }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// The map `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        Self::canonical(
            &self.a * &other.a + &self.b * &other.c,
            &self.a * &other.b + &self.b * &other.d,
            &self.c * &other.a + &self.d * &other.c,
            &self.c * &other.b + &self.d * &other.d,
        )
    }

    pub fn inverse(&self) -> MoebiusMap {
        Self::canonical(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn pow(&self, n: i64) -> MoebiusMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = MoebiusMap::identity();
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                out = out.compose(&sq);
            }
            sq = sq.compose(&sq);
            k >>= 1;
        }
        out
    }

    pub fn conjugate_by(&self, h: &MoebiusMap) -> MoebiusMap {
        h.compose(self).compose(&h.inverse())
    }

    /// Trace of the canonical representative (the sign carries no meaning in PSL).
    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn abs_trace(&self) -> BigInt {
        self.trace().abs()
    }

    pub fn classify(&self) -> Classification {
        let t = self.abs_trace();
        let two = BigInt::from(2);
        if self.is_identity() {
            Classification::Identity
        } else if t == two {
            Classification::Parabolic
        } else if t > two {
            Classification::Hyperbolic
        } else {
            Classification::Elliptic
        }
    }

    /// Image of a rational point (`None` denominator gives infinity).
    pub fn apply_rational(&self, x: &BigRational) -> BoundaryPoint {
        let num = BigRational::from_integer(self.a.clone()) * x + BigRational::from_integer(self.b.clone());
        let den = BigRational::from_integer(self.c.clone()) * x + BigRational::from_integer(self.d.clone());
        if den.is_zero() {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Rational(num / den)
        }
    }

    /// Image of infinity: `a/c`, or infinity when `c = 0`.
    pub fn apply_infinity(&self) -> BoundaryPoint {
        if self.c.is_zero() {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Rational(BigRational::new(self.a.clone(), self.c.clone()))
        }
    }

    pub fn apply_surd(&self, x: &Surd) -> Surd {
        // (az+b)/(cz+d) times the conjugate of the denominator over its norm;
        // the irrational coefficient collapses to q·det/norm
        let (a, b, c, d) = (
            BigRational::from_integer(self.a.clone()),
            BigRational::from_integer(self.b.clone()),
            BigRational::from_integer(self.c.clone()),
            BigRational::from_integer(self.d.clone()),
        );
        let (p, q) = (&x.rat, &x.irr);
        let big_d = BigRational::from_integer(x.radicand.clone());
        let dp = &c * p + &d;
        let norm = &dp * &dp - &c * &c * q * q * &big_d;
        let np = &a * p + &b;
        let rat = (&np * &dp - &a * &c * q * q * &big_d) / &norm;
        let irr = q / &norm;
        Surd { rat, irr, radicand: x.radicand.clone() }
    }

    /// Image of any point; only an interval straddling the pole can fail.
    pub fn apply(&self, x: &BoundaryPoint) -> Result<BoundaryPoint> {
        Ok(match x {
            BoundaryPoint::Infinity => self.apply_infinity(),
            BoundaryPoint::Rational(r) => self.apply_rational(r),
            BoundaryPoint::Surd(s) => BoundaryPoint::Surd(self.apply_surd(s)),
            BoundaryPoint::Interval(i) => {
                let mapped = MappedInterval { map: self.clone(), base: i.clone() };
                let (lo, hi) = mapped.enclose(i).ok_or(Error::UnresolvedPrecision)?;
                let refined = IntervalReal::refinable(Arc::new(mapped));
                match refined {
                    Some(r) if r.lo() == &lo && r.hi() == &hi => BoundaryPoint::Interval(r),
                    _ => BoundaryPoint::Interval(IntervalReal::fixed(lo, hi)),
                }
            }
        })
    }

    /// `self(∞)`, `self(0)` etc. for integer points.
    pub fn apply_int(&self, n: i64) -> BoundaryPoint {
        self.apply_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn fixed_points(&self) -> Result<FixedPoints> {
        match self.classify() {
            Classification::Identity => Err(Error::IdentityInput),
            Classification::Elliptic => Err(Error::EllipticInput),
            Classification::Parabolic => {
                if self.c.is_zero() {
                    Ok(FixedPoints::Parabolic(BoundaryPoint::Infinity))
                } else {
                    let z = BigRational::new(&self.a - &self.d, BigInt::from(2) * &self.c);
                    Ok(FixedPoints::Parabolic(BoundaryPoint::Rational(z)))
                }
            }
            Classification::Hyperbolic => {
                // roots ((a−d) ± √(t²−4)) / 2c; the root whose sign matches t
                // has c·z + d = (t + sign(t)√Δ)/2, the large eigenvalue
                let t = self.trace();
                let disc = &t * &t - BigInt::from(4);
                let two_c = BigInt::from(2) * &self.c;
                let base = BigRational::new(&self.a - &self.d, two_c.clone());
                let step = BigRational::new(BigInt::one(), two_c);
                let sign = if t.is_positive() { step.clone() } else { -step.clone() };
                let attracting = Surd::build(base.clone(), sign.clone(), disc.clone())?;
                let repelling = Surd::build(base, -sign, disc)?;
                let fp = FixedPoints::Hyperbolic {
                    attracting: BoundaryPoint::from(attracting),
                    repelling: BoundaryPoint::from(repelling),
                };
                debug_assert!(self.check_attracting(&fp));
                Ok(fp)
            }
        }
    }

    /// `|cz + d| > 1` at the attracting point, i.e. derivative below 1 there.
    fn check_attracting(&self, fp: &FixedPoints) -> bool {
        let FixedPoints::Hyperbolic { attracting: BoundaryPoint::Surd(s), .. } = fp else {
            return true;
        };
        let c = BigRational::from_integer(self.c.clone());
        let d = BigRational::from_integer(self.d.clone());
        let w = Surd { rat: &c * &s.rat + d, irr: &c * &s.irr, radicand: s.radicand.clone() };
        let one = BigRational::one();
        w.cmp_rational(&one).is_gt() || w.cmp_rational(&-one).is_lt()
    }

    /// Attracting and repelling points of a hyperbolic map.
    pub fn axis(&self) -> Result<(BoundaryPoint, BoundaryPoint)> {
        match self.fixed_points() {
            Ok(FixedPoints::Hyperbolic { attracting, repelling }) => Ok((attracting, repelling)),
            _ => Err(Error::NotHyperbolic),
        }
    }

    /// `2·arccosh(|tr|/2)`.
    pub fn translation_length(&self) -> Result<f64> {
        if self.classify() != Classification::Hyperbolic {
            return Err(Error::NotHyperbolic);
        }
        Ok(length_from_trace(&self.abs_trace()))
    }
}

/// Translation length of a hyperbolic element with the given absolute trace.
pub fn length_from_trace(t: &BigInt) -> f64 {
    let half = t.to_f64().unwrap_or(f64::INFINITY) / 2.0;
    // arccosh(x) = ln(x + sqrt(x²−1)); for large traces use 2ln(t) directly
    if half > 1e150 {
        let bits = t.bits() as f64;
        return 2.0 * (bits * std::f64::consts::LN_2);
    }
    2.0 * half.acosh()
}

struct MappedInterval {
    map: MoebiusMap,
    base: IntervalReal,
}

impl MappedInterval {
    fn enclose(&self, i: &IntervalReal) -> Option<(BigRational, BigRational)> {
        // the pole −d/c must lie outside [lo, hi]
        let c = BigRational::from_integer(self.map.c.clone());
        let d = BigRational::from_integer(self.map.d.clone());
        let den_lo = &c * i.lo() + &d;
        let den_hi = &c * i.hi() + &d;
        if den_lo.is_zero() || den_hi.is_zero() || den_lo.is_positive() != den_hi.is_positive() {
            return None;
        }
        let x = self.map.apply_rational(i.lo());
        let y = self.map.apply_rational(i.hi());
        let (x, y) = (x.as_rational()?.clone(), y.as_rational()?.clone());
        Some(if x <= y { (x, y) } else { (y, x) })
    }
}

impl Refiner for MappedInterval {
    fn enclosure(&self, level: u32) -> Option<(BigRational, BigRational)> {
        let mut cur = self.base.clone();
        for _ in 0..level {
            cur = cur.refine()?;
        }
        self.enclose(&cur)
    }
}
