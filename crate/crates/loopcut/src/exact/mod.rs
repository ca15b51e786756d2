//! Exact integer Möbius arithmetic, quadratic boundary points and circle order.

mod circle;
mod moebius;
mod point;
mod surd;

pub use circle::{cyclic_order, CircleInterval, Containment, Orientation};
pub use moebius::{length_from_trace, Classification, FixedPoints, MoebiusMap};
pub use point::{reduce_mod, BoundaryPoint, IntervalReal, Refiner};
pub(crate) use point::floor_div;
pub use surd::{Quadratic, Surd};
