//! Real quadratic irrationals `a + b·√d` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Primes used to pull square factors out of a radicand.
const SQUARE_SIEVE_LIMIT: u32 = 2000;

/// `rat + irr·√radicand` with `irr ≠ 0` and `radicand > 1` not a perfect square.
///
/// Square factors are removed from the radicand by trial division over small
/// primes followed by a perfect-square test of the cofactor. Comparison and
/// equality are computed on values, so a radicand that still hides a large
/// square factor only costs a few extra multiplications.
#[derive(Clone, Debug)]
pub struct Surd {
    pub(crate) rat: BigRational,
    pub(crate) irr: BigRational,
    pub(crate) radicand: BigInt,
}

/// A value that is either rational or a genuine surd.
#[derive(Clone, Debug)]
pub enum Quadratic {
    Rational(BigRational),
    Surd(Surd),
}

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SQUARE_SIEVE_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if sieve[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        out
    })
}

/// Splits a positive integer `n` as `s²·m` with `m` free of small square factors.
pub(crate) fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut m = n.clone();
    let mut s = BigInt::one();
    for &p in small_primes() {
        let p = BigInt::from(p);
        let p2 = &p * &p;
        if p2 > m {
            break;
        }
        while (&m % &p2).is_zero() {
            m /= &p2;
            s *= &p;
        }
    }
    let r = m.sqrt();
    if &r * &r == m {
        s *= r;
        m = BigInt::one();
    }
    (s, m)
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn ord(s: i8) -> Ordering {
    s.cmp(&0)
}

/// Sign of `p + q·√m` for `m > 0`.
pub(crate) fn sign_one(p: &BigRational, q: &BigRational, m: &BigInt) -> i8 {
    let sp = sign_of(p);
    let sq = sign_of(q);
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    // opposite signs: compare p² with q²m
    let lhs = p * p;
    let rhs = q * q * BigRational::from_integer(m.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

/// Sign of `p + q·√m + r·√n` for positive `m`, `n`.
pub(crate) fn sign_two(p: &BigRational, q: &BigRational, m: &BigInt, r: &BigRational, n: &BigInt) -> i8 {
    if m == n {
        return sign_one(p, &(q + r), m);
    }
    let sx = sign_one(p, q, m);
    let sy = sign_of(r);
    if sy == 0 {
        return sx;
    }
    if sx == 0 || sx == sy {
        return sy;
    }
    // X = p + q√m and Y = r√n have opposite signs: compare X² with Y²
    let mq = BigRational::from_integer(m.clone());
    let nq = BigRational::from_integer(n.clone());
    let rat = p * p + q * q * &mq - r * r * &nq;
    let irr = BigRational::from_integer(BigInt::from(2)) * p * q;
    match sign_one(&rat, &irr, m) {
        1 => sx,
        -1 => sy,
        _ => 0,
    }
}

impl Surd {
    /// Builds `a + b·√d`, collapsing to a rational when `b = 0` or `d` is a square.
    pub fn build(a: BigRational, b: BigRational, d: BigInt) -> Result<Quadratic> {
        if d.is_negative() {
            return Err(Error::Parse(format!("negative radicand {d}")));
        }
        if b.is_zero() || d.is_zero() {
            return Ok(Quadratic::Rational(a));
        }
        let (s, m) = split_square(&d);
        let b = b * BigRational::from_integer(s);
        if m.is_one() {
            return Ok(Quadratic::Rational(a + b));
        }
        Ok(Quadratic::Surd(Surd { rat: a, irr: b, radicand: m }))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irr
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    /// Sign of `self − r`.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        ord(sign_one(&(&self.rat - r), &self.irr, &self.radicand))
    }

    pub fn cmp_surd(&self, other: &Surd) -> Ordering {
        let p = &self.rat - &other.rat;
        let r = -other.irr.clone();
        ord(sign_two(&p, &self.irr, &self.radicand, &r, &other.radicand))
    }

    /// Integers `(u, v, w)` with value `(u + v√d)/w`, `w > 0` and `gcd(u, v, w) = 1`.
    pub fn integer_form(&self) -> (BigInt, BigInt, BigInt) {
        let w = self.rat.denom().lcm(self.irr.denom());
        let u = self.rat.numer() * (&w / self.rat.denom());
        let v = self.irr.numer() * (&w / self.irr.denom());
        let g = u.gcd(&v).gcd(&w);
        (u / &g, v / &g, w / &g)
    }

    /// Rational bounds `lo ≤ value ≤ hi` with `hi − lo ≤ 2^-bits / w`.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let (u, v, w) = self.integer_form();
        let scale = BigInt::one() << bits;
        let square = &v * &v * &self.radicand * &scale * &scale;
        let root = square.sqrt();
        let (low, high) = if v.is_positive() {
            (&u * &scale + &root, &u * &scale + &root + 1)
        } else {
            (&u * &scale - &root - 1, &u * &scale - &root)
        };
        let den = w * scale;
        (BigRational::new(low, den.clone()), BigRational::new(high, den))
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, _) = self.enclosure(80);
        lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn neg(&self) -> Surd {
        Surd { rat: -self.rat.clone(), irr: -self.irr.clone(), radicand: self.radicand.clone() }
    }

    pub fn add_rational(&self, r: &BigRational) -> Surd {
        Surd { rat: &self.rat + r, irr: self.irr.clone(), radicand: self.radicand.clone() }
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_surd(other) == Ordering::Equal
    }
}

impl Eq for Surd {}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v, w) = self.integer_form();
        let op = if v.sign() == Sign::Minus { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/{}", u, op, v.abs(), self.radicand, w)
    }
}

impl FromStr for Surd {
    type Err = Error;

    /// Parses `(u+v*sqrt(d))/w`; `u-v*sqrt(d)` and a missing `/w` are accepted.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (body, w) = match t.rfind(")/") {
            Some(i) if t.starts_with('(') => (&t[1..i], &t[i + 2..]),
            _ => (t.as_str(), "1"),
        };
        let w: BigInt = w.parse().map_err(|_| bad())?;
        let k = body.find("sqrt(").ok_or_else(bad)?;
        let d: BigInt = body[k + 5..].trim_end_matches(')').parse().map_err(|_| bad())?;
        let head = body[..k].trim_end_matches('*');
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (u, v) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let u: BigInt = u.parse().map_err(|_| bad())?;
        let v: BigInt = match v {
            "+" | "" => BigInt::one(),
            "-" => -BigInt::one(),
            v => v.trim_start_matches('+').parse().map_err(|_| bad())?,
        };
        if w.is_zero() {
            return Err(bad());
        }
        let a = BigRational::new(u, w.clone());
        let b = BigRational::new(v, w);
        match Surd::build(a, b, d)? {
            Quadratic::Surd(s) => Ok(s),
            Quadratic::Rational(_) => Err(bad()),
        }
    }
}
