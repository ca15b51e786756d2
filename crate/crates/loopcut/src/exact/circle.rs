//! Cyclic order on the circle and open arcs.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::point::BoundaryPoint;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
    Degenerate,
}

/// Whether `y` lies on the open arc running positively (increasing, through ∞ last) from `x` to `z`.
pub fn cyclic_order(x: &BoundaryPoint, y: &BoundaryPoint, z: &BoundaryPoint) -> Result<Orientation> {
    let xy = x.line_cmp(y)?;
    let yz = y.line_cmp(z)?;
    let zx = z.line_cmp(x)?;
    if xy == Ordering::Equal || yz == Ordering::Equal || zx == Ordering::Equal {
        return Ok(Orientation::Degenerate);
    }
    // exactly one of the three consecutive pairs descends in a positive triple
    let descents = [xy, yz, zx].iter().filter(|&&o| o == Ordering::Greater).count();
    Ok(if descents == 1 { Orientation::Positive } else { Orientation::Negative })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Containment {
    Yes,
    No,
    Unresolved,
}

/// The open arc from `left` to `right` in the positive direction.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleInterval {
    pub left: BoundaryPoint,
    pub right: BoundaryPoint,
}

impl fmt::Display for CircleInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

impl CircleInterval {
    pub fn new(left: BoundaryPoint, right: BoundaryPoint) -> Result<Self> {
        if left.line_cmp(&right)? == Ordering::Equal {
            return Err(Error::Invariant(format!("empty arc at {left}")));
        }
        Ok(CircleInterval { left, right })
    }

    pub fn contains(&self, x: &BoundaryPoint) -> Containment {
        match cyclic_order(&self.left, x, &self.right) {
            Ok(Orientation::Positive) => Containment::Yes,
            Ok(_) => Containment::No,
            Err(_) => Containment::Unresolved,
        }
    }

    /// Exact membership; fails only for interval points.
    pub fn holds(&self, x: &BoundaryPoint) -> Result<bool> {
        Ok(cyclic_order(&self.left, x, &self.right)? == Orientation::Positive)
    }

    /// True when the closed arc `[left, right]` avoids infinity.
    pub fn is_bounded(&self) -> Result<bool> {
        if self.left.is_infinity() || self.right.is_infinity() {
            return Ok(false);
        }
        Ok(self.left.line_cmp(&self.right)? == Ordering::Less)
    }

    /// Open arcs are disjoint iff neither left end lies inside the other arc and the left ends differ.
    pub fn disjoint(&self, other: &CircleInterval) -> Result<bool> {
        if self.left.line_cmp(&other.left)? == Ordering::Equal {
            return Ok(false);
        }
        Ok(!self.holds(&other.left)? && !other.holds(&self.left)?)
    }

    /// `other ⊆ self` for open arcs.
    pub fn contains_interval(&self, other: &CircleInterval) -> Result<bool> {
        let left_ok = other.left == self.left || self.holds(&other.left)?;
        let right_ok = other.right == self.right || self.holds(&other.right)?;
        if !(left_ok && right_ok) {
            return Ok(false);
        }
        // both ends inside: other must run forward without wrapping past self.right
        Ok(cyclic_order(&self.left, &other.left, &other.right)? != Orientation::Negative
            || other.left == self.left)
    }

    /// Component containing `x` of `self ∩ other`, both arcs containing `x`.
    pub fn meet_at(&self, other: &CircleInterval, x: &BoundaryPoint) -> Result<CircleInterval> {
        let left = if other.left == self.left
            || cyclic_order(&self.left, &other.left, x)? == Orientation::Positive
        {
            other.left.clone()
        } else {
            self.left.clone()
        };
        let right = if other.right == self.right
            || cyclic_order(x, &other.right, &self.right)? == Orientation::Positive
        {
            other.right.clone()
        } else {
            self.right.clone()
        };
        CircleInterval::new(left, right)
    }
}
