//! Points of the circle `R ∪ {∞}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::surd::{Quadratic, Surd};
use crate::error::{Error, Result};

/// Produces nested rational enclosures of a real number, one per level.
pub trait Refiner: Send + Sync {
    /// Enclosure at `level`, or `None` once no finer enclosure is available.
    fn enclosure(&self, level: u32) -> Option<(BigRational, BigRational)>;
}

/// A real number known through a shrinking sequence of closed rational intervals.
#[derive(Clone)]
pub struct IntervalReal {
    lo: BigRational,
    hi: BigRational,
    level: u32,
    refiner: Option<Arc<dyn Refiner>>,
}

impl fmt::Debug for IntervalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntervalReal")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("level", &self.level)
            .field("refinable", &self.refiner.is_some())
            .finish()
    }
}

impl IntervalReal {
    /// A fixed enclosure `[lo, hi]` that cannot be refined further.
    pub fn fixed(lo: BigRational, hi: BigRational) -> Self {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        IntervalReal { lo, hi, level: 0, refiner: None }
    }

    /// Starts at the refiner's level-0 enclosure.
    pub fn refinable(refiner: Arc<dyn Refiner>) -> Option<Self> {
        let (lo, hi) = refiner.enclosure(0)?;
        Some(IntervalReal { lo, hi, level: 0, refiner: Some(refiner) })
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// The next enclosure, intersected with the current one so refinement is monotone.
    pub fn refine(&self) -> Option<IntervalReal> {
        let r = self.refiner.as_ref()?;
        let (lo, hi) = r.enclosure(self.level + 1)?;
        let lo = if lo > self.lo { lo } else { self.lo.clone() };
        let hi = if hi < self.hi { hi } else { self.hi.clone() };
        if lo > hi {
            return None;
        }
        Some(IntervalReal { lo, hi, level: self.level + 1, refiner: self.refiner.clone() })
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }
}

/// A point of the boundary circle.
#[derive(Clone, Debug)]
pub enum BoundaryPoint {
    Infinity,
    Rational(BigRational),
    Surd(Surd),
    Interval(IntervalReal),
}

impl From<Quadratic> for BoundaryPoint {
    fn from(q: Quadratic) -> Self {
        match q {
            Quadratic::Rational(r) => BoundaryPoint::Rational(r),
            Quadratic::Surd(s) => BoundaryPoint::Surd(s),
        }
    }
}

impl From<BigRational> for BoundaryPoint {
    fn from(r: BigRational) -> Self {
        BoundaryPoint::Rational(r)
    }
}

impl BoundaryPoint {
    pub fn int(n: i64) -> Self {
        BoundaryPoint::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        BoundaryPoint::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, BoundaryPoint::Interval(_))
    }

    pub fn is_parabolic_candidate(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity | BoundaryPoint::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            BoundaryPoint::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Order on `R ∪ {∞}` with `∞` above every real number.
    ///
    /// Fails only when an interval enclosure overlaps the other point.
    pub fn line_cmp(&self, other: &BoundaryPoint) -> Result<Ordering> {
        use BoundaryPoint::*;
        Ok(match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, _) => Ordering::Greater,
            (_, Infinity) => Ordering::Less,
            (Rational(x), Rational(y)) => x.cmp(y),
            (Surd(x), Rational(y)) => x.cmp_rational(y),
            (Rational(x), Surd(y)) => y.cmp_rational(x).reverse(),
            (Surd(x), Surd(y)) => x.cmp_surd(y),
            (Interval(i), y) => return interval_cmp(i, y),
            (x, Interval(i)) => return interval_cmp(i, x).map(Ordering::reverse),
        })
    }

    /// `self ≤ r` and `self ≥ r` tests against a rational bound.
    fn cmp_rational(&self, r: &BigRational) -> Result<Ordering> {
        self.line_cmp(&BoundaryPoint::Rational(r.clone()))
    }

    /// Rational enclosure; `None` for infinity.
    pub fn enclosure(&self, bits: u32) -> Option<(BigRational, BigRational)> {
        match self {
            BoundaryPoint::Infinity => None,
            BoundaryPoint::Rational(r) => Some((r.clone(), r.clone())),
            BoundaryPoint::Surd(s) => Some(s.enclosure(bits)),
            BoundaryPoint::Interval(i) => Some((i.lo.clone(), i.hi.clone())),
        }
    }

    /// Nearest double; infinity maps to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundaryPoint::Infinity => f64::INFINITY,
            BoundaryPoint::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            BoundaryPoint::Surd(s) => s.to_f64(),
            BoundaryPoint::Interval(i) => i.midpoint().to_f64().unwrap_or(f64::NAN),
        }
    }

    /// `self + r` for a rational shift.
    pub fn shifted(&self, r: &BigRational) -> BoundaryPoint {
        match self {
            BoundaryPoint::Infinity => BoundaryPoint::Infinity,
            BoundaryPoint::Rational(x) => BoundaryPoint::Rational(x + r),
            BoundaryPoint::Surd(s) => BoundaryPoint::Surd(s.add_rational(r)),
            BoundaryPoint::Interval(i) => BoundaryPoint::Interval(IntervalReal {
                lo: &i.lo + r,
                hi: &i.hi + r,
                level: i.level,
                refiner: i.refiner.as_ref().map(|inner| {
                    Arc::new(Shifted { inner: inner.clone(), by: r.clone() }) as Arc<dyn Refiner>
                }),
            }),
        }
    }
}

struct Shifted {
    inner: Arc<dyn Refiner>,
    by: BigRational,
}

impl Refiner for Shifted {
    fn enclosure(&self, level: u32) -> Option<(BigRational, BigRational)> {
        let (lo, hi) = self.inner.enclosure(level)?;
        Some((lo + &self.by, hi + &self.by))
    }
}

fn interval_cmp(i: &IntervalReal, y: &BoundaryPoint) -> Result<Ordering> {
    match y {
        BoundaryPoint::Infinity => Ok(Ordering::Less),
        BoundaryPoint::Interval(j) => {
            if i.hi < j.lo {
                Ok(Ordering::Less)
            } else if i.lo > j.hi {
                Ok(Ordering::Greater)
            } else {
                Err(Error::UnresolvedPrecision)
            }
        }
        _ => {
            if y.cmp_rational(&i.hi)? == Ordering::Greater {
                Ok(Ordering::Less)
            } else if y.cmp_rational(&i.lo)? == Ordering::Less {
                Ok(Ordering::Greater)
            } else {
                Err(Error::UnresolvedPrecision)
            }
        }
    }
}

impl PartialEq for BoundaryPoint {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (BoundaryPoint::Interval(i), BoundaryPoint::Interval(j)) => i.lo == j.lo && i.hi == j.hi,
            (BoundaryPoint::Interval(_), _) | (_, BoundaryPoint::Interval(_)) => false,
            _ => matches!(self.line_cmp(other), Ok(Ordering::Equal)),
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Infinity => write!(f, "inf"),
            BoundaryPoint::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            BoundaryPoint::Surd(s) => write!(f, "{s}"),
            BoundaryPoint::Interval(i) => {
                write!(f, "[{}/{},{}/{}]", i.lo.numer(), i.lo.denom(), i.hi.numer(), i.hi.denom())
            }
        }
    }
}

/// Parses a decimal such as `-1.25` into an exact value and the half-width of its last digit.
fn parse_decimal(s: &str) -> Option<(BigRational, BigRational)> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let mut value = BigRational::new(digits, scale.clone());
    if neg {
        value = -value;
    }
    let half = BigRational::new(BigInt::one(), scale * 2);
    Some((value, half))
}

impl FromStr for BoundaryPoint {
    type Err = Error;

    /// Accepts `inf`, `n/d`, integers, surds `(u+v*sqrt(d))/w`, `[lo,hi]`
    /// and decimals, which become an interval of half a unit in the last place.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(BoundaryPoint::Infinity);
        }
        if t.contains("sqrt") {
            return Ok(BoundaryPoint::Surd(t.parse()?));
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (lo, hi) = inner.split_once(',').ok_or_else(|| Error::Parse(s.to_string()))?;
            let lo = parse_rational(lo.trim()).ok_or_else(|| Error::Parse(s.to_string()))?;
            let hi = parse_rational(hi.trim()).ok_or_else(|| Error::Parse(s.to_string()))?;
            return Ok(BoundaryPoint::Interval(IntervalReal::fixed(lo, hi)));
        }
        if t.contains('.') {
            let (v, h) = parse_decimal(t).ok_or_else(|| Error::Parse(s.to_string()))?;
            return Ok(BoundaryPoint::Interval(IntervalReal::fixed(&v - &h, &v + &h)));
        }
        parse_rational(t).map(BoundaryPoint::Rational).ok_or_else(|| Error::Parse(s.to_string()))
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// `x mod c` reduced into `[0, c)` together with the quotient.
pub fn reduce_mod(x: &BigRational, c: &BigRational) -> (BigInt, BigRational) {
    let q = (x / c).floor().to_integer();
    let r = x - c * BigRational::from_integer(q.clone());
    (q, r)
}

/// `floor(x / c)` for a finite point; intervals are refined until the answer is determined.
pub(crate) fn floor_div(x: &BoundaryPoint, c: &BigRational) -> Result<BigInt> {
    match x {
        BoundaryPoint::Infinity => Err(Error::NotRational),
        BoundaryPoint::Rational(r) => Ok((r / c).floor().to_integer()),
        BoundaryPoint::Surd(s) => {
            // irrational, so it never sits on a multiple of c and the loop ends
            let mut bits = 64;
            loop {
                let (lo, hi) = s.enclosure(bits);
                let a = (&lo / c).floor().to_integer();
                if a == (&hi / c).floor().to_integer() {
                    return Ok(a);
                }
                bits *= 2;
            }
        }
        BoundaryPoint::Interval(i) => {
            let mut cur = i.clone();
            loop {
                let a = (&cur.lo / c).floor().to_integer();
                let b = &cur.hi / c;
                if b < BigRational::from_integer(&a + 1) {
                    return Ok(a);
                }
                cur = cur.refine().ok_or(Error::UnresolvedPrecision)?;
            }
        }
    }
}
