#![allow(dead_code)]

use loopcut::surface::{Letter, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut impl Rng, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::ALL[rng.gen_range(0..4)];
        if letters.last() == Some(&l.inverse()) {
            continue;
        }
        letters.push(l);
    }
    Word::from_letters(letters)
}

/// Random rational in `[0, 6)` with denominator below `max_den`.
pub fn random_rational(rng: &mut impl Rng, max_den: i64) -> BigRational {
    let d = rng.gen_range(1..max_den);
    let n = rng.gen_range(0..6 * d);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The `count` rationals of smallest denominator inside a bounded open arc.
pub fn rationals_inside(u: &loopcut::exact::CircleInterval, count: usize) -> Vec<BigRational> {
    use loopcut::exact::BoundaryPoint;
    let lo = u.left.enclosure(64).unwrap().0;
    let hi = u.right.enclosure(64).unwrap().1;
    assert!(lo < hi, "arc {u} wraps through infinity");
    let mut out: Vec<BigRational> = Vec::new();
    let mut d = BigInt::from(1);
    while out.len() < count {
        let first = (&lo * &d).floor().to_integer();
        let mut n = first;
        loop {
            let y = BigRational::new(n.clone(), d.clone());
            if y > hi {
                break;
            }
            if y.denom() == &d && u.holds(&BoundaryPoint::Rational(y.clone())).unwrap() && !out.contains(&y) {
                out.push(y);
                if out.len() == count {
                    break;
                }
            }
            n += 1;
        }
        d += 1;
    }
    out
}
