//! Exact boundary dynamics for a once-punctured hyperbolic torus.
//!
//! The default surface is the commutator subgroup of the modular group acting
//! on the upper half-plane, so every parabolic point is a rational number and
//! every axis endpoint is a quadratic surd. Everything that decides a yes/no
//! question runs in exact arithmetic.

pub mod analysis;
pub mod cutting;
pub mod error;
pub mod exact;
pub mod surface;
pub mod topology;

pub use error::{Error, Result};
