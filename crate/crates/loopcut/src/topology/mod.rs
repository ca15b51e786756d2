//! Arc systems on the surface, mapping classes, and wandering certificates.

pub mod arcs;
pub mod mapping;
pub mod wander;

pub use arcs::{ArcSystem, Census, Crossing, CuspArc, FillingVerdict};
pub use mapping::{enumerate_classes, twist_generators, MappingClass, MappingClassRecord};
pub use wander::{filling_prefix, CertificateRecord, WanderingCertificate};
