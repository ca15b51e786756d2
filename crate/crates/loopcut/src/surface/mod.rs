//! The surface group: generators, cusp normalization, membership and parabolic witnesses.

mod config;
mod word;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{BoundaryPoint, CircleInterval, Classification, MoebiusMap};

pub use config::load_surface;
pub use word::{Letter, Word};

/// A group element carried as its reduced word together with its matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    word: Word,
    matrix: MoebiusMap,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

impl GroupElement {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn matrix(&self) -> &MoebiusMap {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// A parabolic fixed point together with a group element carrying the cusp to it.
#[derive(Clone, Debug)]
pub struct ParabolicPoint {
    pub point: BoundaryPoint,
    pub witness: GroupElement,
}

impl PartialEq for ParabolicPoint {
    fn eq(&self, other: &Self) -> bool {
        self.point == other.point
    }
}

impl fmt::Display for ParabolicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.point)
    }
}

/// Index-6 character of the modular group; its kernel is the commutator subgroup.
///
/// Writes `m = T^k S m'` repeatedly (T: z ↦ z+1, S: z ↦ −1/z) and sums
/// `χ(T) = 1`, `χ(S) = 3`.
pub fn modular_character(m: &MoebiusMap) -> u32 {
    let [a, b, c, d] = m.entries();
    let (mut a, mut b, mut c, mut d) = (a.clone(), b.clone(), c.clone(), d.clone());
    let mut acc = BigInt::zero();
    while !c.is_zero() {
        let k = a.div_floor(&c);
        acc += &k + 3;
        let na = c.clone();
        let nb = d.clone();
        let nc = &k * &c - &a;
        let nd = &k * &d - &b;
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    let n = if a.is_one() { b } else { -b };
    let r = (acc + n).mod_floor(&BigInt::from(6));
    r.try_into().unwrap_or(0)
}

/// A one-cusped surface group inside the integer Möbius group.
#[derive(Clone, Debug)]
pub struct SurfaceGroup {
    name: String,
    letters: [MoebiusMap; 4],
    peripheral: Word,
    cusp_width: BigRational,
    euler_characteristic: i32,
    orientation_sign: i8,
    pingpong: [CircleInterval; 4],
    base_point: (BigRational, BigRational),
    modular_kernel: bool,
    theta: GroupElement,
}

/// Where a point of the upper half-plane sits relative to a ping-pong arc.
fn in_region(arc: &CircleInterval, x: &BigRational, y2: &BigRational) -> bool {
    match (&arc.left, &arc.right) {
        (BoundaryPoint::Infinity, BoundaryPoint::Rational(r)) => x < r,
        (BoundaryPoint::Rational(l), BoundaryPoint::Infinity) => x > l,
        (BoundaryPoint::Rational(l), BoundaryPoint::Rational(r)) => {
            let two = BigInt::from(2);
            let m = (l + r) / &two;
            let rho = (r - l) / &two;
            let dist = (x - &m) * (x - &m) + y2;
            let rho2 = &rho * &rho;
            if l < r {
                dist < rho2
            } else {
                dist > rho2
            }
        }
        _ => false,
    }
}

/// `g·z` for `z = x + iy`, returned as `(Re, Im²)`.
fn act_on_plane(g: &MoebiusMap, x: &BigRational, y2: &BigRational) -> (BigRational, BigRational) {
    let [a, b, c, d] = g.entries().map(|e| BigRational::from_integer(e.clone()));
    let cx_d = &c * x + &d;
    let den = &cx_d * &cx_d + &c * &c * y2;
    let norm_z = x * x + y2;
    let re = (&a * &c * norm_z + (&a * &d + &b * &c) * x + &b * &d) / &den;
    let im2 = y2 / (&den * &den);
    (re, im2)
}

impl SurfaceGroup {
    /// The commutator subgroup of the modular group, free on `a`, `b`, with cusp at infinity.
    pub fn modular_torus() -> SurfaceGroup {
        let s = MoebiusMap::from_i64(0, -1, 1, 0).expect("det 1");
        let a = MoebiusMap::from_i64(1, 1, 1, 2).expect("det 1").conjugate_by(&s);
        let b = MoebiusMap::from_i64(1, -1, -1, 2).expect("det 1").conjugate_by(&s);
        let arc = |l: BoundaryPoint, r: BoundaryPoint| CircleInterval { left: l, right: r };
        let pingpong = [
            arc(BoundaryPoint::Infinity, BoundaryPoint::int(-1)),
            arc(BoundaryPoint::int(0), BoundaryPoint::int(1)),
            arc(BoundaryPoint::int(1), BoundaryPoint::Infinity),
            arc(BoundaryPoint::int(-1), BoundaryPoint::int(0)),
        ];
        let six = BigRational::from_integer(BigInt::from(6));
        Self::assemble(
            "modular-torus".into(),
            a,
            b,
            "abAB".parse().expect("word"),
            six,
            -1,
            -1,
            pingpong,
            (BigRational::zero(), BigRational::one()),
            true,
        )
        .expect("modular torus data is consistent")
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        name: String,
        a: MoebiusMap,
        b: MoebiusMap,
        peripheral: Word,
        cusp_width: BigRational,
        euler_characteristic: i32,
        orientation_sign: i8,
        pingpong: [CircleInterval; 4],
        base_point: (BigRational, BigRational),
        modular_kernel: bool,
    ) -> Result<SurfaceGroup> {
        let letters = [a.clone(), a.inverse(), b.clone(), b.inverse()];
        let placeholder = GroupElement { word: Word::empty(), matrix: MoebiusMap::identity() };
        let mut s = SurfaceGroup {
            name,
            letters,
            peripheral,
            cusp_width,
            euler_characteristic,
            orientation_sign,
            pingpong,
            base_point,
            modular_kernel,
            theta: placeholder,
        };
        s.validate()?;
        let k = s.element(s.peripheral.clone());
        // θ(∞) translates by −c: the peripheral word or its inverse
        s.theta = if orientation_sign < 0 { k } else { s.inverse(&k) };
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let k = self.evaluate(&self.peripheral);
        if k.classify() != Classification::Parabolic || !k.apply_infinity().is_infinity() {
            return Err(Error::Invariant(format!("peripheral word evaluates to {k}, not a parabolic fixing inf")));
        }
        let [_, shift, _, _] = k.entries();
        let expected = BigRational::from_integer(shift.clone());
        let signed = &self.cusp_width * BigInt::from(self.orientation_sign);
        if expected != signed {
            return Err(Error::Invariant(format!(
                "peripheral translates by {expected}, expected orientation {} times width {}",
                self.orientation_sign, self.cusp_width
            )));
        }
        if !self.cusp_width.is_positive() || !self.cusp_width.is_integer() {
            return Err(Error::Invariant("cusp width must be a positive integer".into()));
        }
        if self.euler_characteristic >= 0 {
            return Err(Error::Invariant("euler characteristic must be negative".into()));
        }
        // ping-pong: each letter carries the complement of its inverse's arc onto its own arc
        for l in Letter::ALL {
            let own = &self.pingpong[l.index()];
            let inv = &self.pingpong[l.inverse().index()];
            let m = &self.letters[l.index()];
            let left = m.apply(&inv.right)?;
            let right = m.apply(&inv.left)?;
            if left != own.left || right != own.right {
                return Err(Error::Invariant(format!("letter {} does not map the ping-pong arcs", l.to_char())));
            }
            for other in Letter::ALL {
                if other != l && !own.disjoint(&self.pingpong[other.index()])? {
                    return Err(Error::Invariant(format!(
                        "ping-pong arcs of {} and {} overlap",
                        l.to_char(),
                        other.to_char()
                    )));
                }
            }
            for end in [&own.left, &own.right] {
                if !end.is_parabolic_candidate() {
                    return Err(Error::Invariant("ping-pong arc ends must be rational".into()));
                }
            }
        }
        if !self.base_point.1.is_positive() {
            return Err(Error::Invariant("base point must lie in the upper half-plane".into()));
        }
        for arc in &self.pingpong {
            if in_region(arc, &self.base_point.0, &self.base_point.1) {
                return Err(Error::Invariant("base point lies in a ping-pong region".into()));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator(&self, l: Letter) -> &MoebiusMap {
        &self.letters[l.index()]
    }

    pub fn peripheral_word(&self) -> &Word {
        &self.peripheral
    }

    pub fn cusp_width(&self) -> &BigRational {
        &self.cusp_width
    }

    pub fn cusp_width_int(&self) -> BigInt {
        self.cusp_width.to_integer()
    }

    pub fn euler_characteristic(&self) -> i32 {
        self.euler_characteristic
    }

    pub fn orientation_sign(&self) -> i8 {
        self.orientation_sign
    }

    pub fn pingpong_arc(&self, l: Letter) -> &CircleInterval {
        &self.pingpong[l.index()]
    }

    pub fn base_point(&self) -> &(BigRational, BigRational) {
        &self.base_point
    }

    pub fn uses_modular_character(&self) -> bool {
        self.modular_kernel
    }

    pub fn evaluate(&self, w: &Word) -> MoebiusMap {
        w.letters().iter().fold(MoebiusMap::identity(), |m, l| m.compose(&self.letters[l.index()]))
    }

    pub fn element(&self, w: Word) -> GroupElement {
        let matrix = self.evaluate(&w);
        GroupElement { word: w, matrix }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { word: Word::empty(), matrix: MoebiusMap::identity() }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let word = g.word.mul(&h.word);
        let matrix = g.matrix.compose(&h.matrix);
        debug_assert_eq!(matrix, self.evaluate(&word));
        GroupElement { word, matrix }
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        GroupElement { word: g.word.inverse(), matrix: g.matrix.inverse() }
    }

    pub fn pow(&self, g: &GroupElement, n: i64) -> GroupElement {
        GroupElement { word: g.word.pow(n), matrix: g.matrix.pow(n) }
    }

    /// `h g h⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.mul(&self.mul(h, g), &self.inverse(h))
    }

    /// θ(∞): the generator of the cusp stabilizer translating by `−c`.
    pub fn theta_infinity(&self) -> &GroupElement {
        &self.theta
    }

    /// `θ(∞)^n`, which acts as `z ↦ z + n·s·c` for the orientation sign `s`.
    pub fn theta_power(&self, n: &BigInt) -> GroupElement {
        let n: i64 = n.try_into().expect("cusp shift fits in i64");
        self.pow(&self.theta, n)
    }

    /// The power of θ(∞) acting as `z ↦ z + n·c`.
    pub fn cusp_translation(&self, n: &BigInt) -> GroupElement {
        self.theta_power(&(n * BigInt::from(self.orientation_sign)))
    }

    fn quick_reject(&self, g: &MoebiusMap) -> bool {
        self.modular_kernel && modular_character(g) != 0
    }

    /// Reduced word of `g` if `g` lies in the group.
    pub fn contains(&self, g: &MoebiusMap) -> Option<Word> {
        if self.quick_reject(g) {
            return None;
        }
        let (x0, y0) = &self.base_point;
        let bits: u64 = g.entries().iter().map(|e| e.bits()).max().unwrap_or(0);
        let limit = 8 * bits as usize + 64;
        let mut rest = g.clone();
        let mut letters = Vec::new();
        for _ in 0..limit {
            if rest.is_identity() {
                return Some(Word::from_letters(letters));
            }
            let (x, y2) = act_on_plane(&rest, x0, y0);
            let hit = Letter::ALL.into_iter().find(|l| in_region(&self.pingpong[l.index()], &x, &y2));
            {
                let l = hit?;
                letters.push(l);
                rest = self.letters[l.inverse().index()].compose(&rest);
            }
        }
        None
    }

    pub fn is_member(&self, g: &MoebiusMap) -> bool {
        if self.modular_kernel {
            return modular_character(g) == 0;
        }
        self.contains(g).is_some()
    }

    /// Element of the group carrying `∞` to `x`.
    pub fn parabolic_witness(&self, x: &BoundaryPoint) -> Result<ParabolicPoint> {
        let m = match x {
            BoundaryPoint::Infinity => {
                return Ok(ParabolicPoint { point: BoundaryPoint::Infinity, witness: self.identity() })
            }
            BoundaryPoint::Rational(r) => {
                let (n, d) = (r.numer().clone(), r.denom().clone());
                let e = n.extended_gcd(&d);
                // n·x + d·y = 1, so [[n, −y], [d, x]] has determinant 1 and sends ∞ to n/d
                MoebiusMap::new(n, -e.y, d, e.x)?
            }
            _ => return Err(Error::NotRational),
        };
        let width: i64 = (&self.cusp_width.to_integer()).try_into().unwrap_or(1);
        let shifts: Vec<i64> = if self.modular_kernel {
            let k = (6 - modular_character(&m) as i64).rem_euclid(6);
            vec![k]
        } else {
            (0..width).collect()
        };
        for k in shifts {
            let h = m.compose(&MoebiusMap::translation(&BigInt::from(k)));
            if let Some(word) = self.contains(&h) {
                let witness = GroupElement { word, matrix: h };
                debug_assert!(witness.matrix.apply_infinity() == *x);
                return Ok(ParabolicPoint { point: x.clone(), witness });
            }
        }
        Err(Error::WitnessSearchExhausted(x.to_string()))
    }

    /// Generator of the stabilizer of `p`, conjugated from θ(∞).
    pub fn theta(&self, p: &ParabolicPoint) -> GroupElement {
        self.conjugate(&self.theta, &p.witness)
    }

    /// Parabolic point `g·p`, with witness `g·witness(p)`.
    pub fn translate_point(&self, g: &GroupElement, p: &ParabolicPoint) -> ParabolicPoint {
        let witness = self.mul(g, &p.witness);
        ParabolicPoint { point: witness.matrix.apply_infinity(), witness }
    }

    /// Reduces a finite point into `[0, c)` by a power of θ(∞); returns `(n, x')` with `x = x' + n·c`.
    pub fn reduce_point(&self, x: &BoundaryPoint) -> Result<(BigInt, BoundaryPoint)> {
        let n = crate::exact::floor_div(x, &self.cusp_width)?;
        let shift = -(BigRational::from_integer(n.clone()) * &self.cusp_width);
        Ok((n, x.shifted(&shift)))
    }
}
