//! Reduced words in the free group on `a`, `b`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator or its inverse; written `a`, `A`, `b`, `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Generator slot: 0 for `a`, 1 for `b`.
    pub fn generator(self) -> usize {
        match self {
            Letter::A | Letter::AInv => 0,
            Letter::B | Letter::BInv => 1,
        }
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, Letter::AInv | Letter::BInv)
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'A' => Some(Letter::AInv),
            'b' => Some(Letter::B),
            'B' => Some(Letter::BInv),
            _ => None,
        }
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self · x · self⁻¹`.
    pub fn conjugate(&self, x: &Word) -> Word {
        self.mul(x).mul(&self.inverse())
    }

    /// Splits `w = u·c·u⁻¹` with `c` cyclically reduced.
    pub fn cyclic_split(&self) -> (Word, Word) {
        let v = &self.0;
        let mut i = 0;
        while i < v.len() / 2 && v[i] == v[v.len() - 1 - i].inverse() {
            i += 1;
        }
        (Word(v[..i].to_vec()), Word(v[i..v.len() - i].to_vec()))
    }

    /// Exponent sums of `a` and `b`.
    pub fn abelianization(&self) -> (i64, i64) {
        let mut s = (0i64, 0i64);
        for l in &self.0 {
            match l {
                Letter::A => s.0 += 1,
                Letter::AInv => s.0 -= 1,
                Letter::B => s.1 += 1,
                Letter::BInv => s.1 -= 1,
            }
        }
        s
    }

    /// Image under the endomorphism sending `a`, `b` to the given words.
    pub fn substitute(&self, images: &[Word; 2]) -> Word {
        let inverses = [images[0].inverse(), images[1].inverse()];
        let mut out = Vec::new();
        for l in &self.0 {
            let piece = if l.is_inverse() { &inverses[l.generator()] } else { &images[l.generator()] };
            for &x in &piece.0 {
                if out.last() == Some(&x.inverse()) {
                    out.pop();
                } else {
                    out.push(x);
                }
            }
        }
        Word(out)
    }

    /// Least rotation of the cyclically reduced core of `w` and of `w⁻¹`.
    pub fn conjugacy_key(&self) -> Word {
        let (_, core) = self.cyclic_split();
        let best = |w: &Word| -> Word {
            (0..w.len().max(1))
                .map(|k| {
                    let mut r = w.0[k.min(w.len())..].to_vec();
                    r.extend_from_slice(&w.0[..k.min(w.len())]);
                    Word(r)
                })
                .min()
                .unwrap_or_default()
        };
        best(&core).min(best(&core.inverse()))
    }

    /// All reduced words of length exactly `n`, in lexicographic letter order.
    pub fn all_of_length(n: usize) -> Vec<Word> {
        let mut layer = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(layer.len() * 3);
            for w in &layer {
                for l in Letter::ALL {
                    if w.0.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            layer = next;
        }
        layer
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::empty());
        }
        let letters: Option<Vec<Letter>> = t.chars().map(Letter::from_char).collect();
        letters.map(Word::from_letters).ok_or_else(|| Error::Parse(s.to_string()))
    }
}
