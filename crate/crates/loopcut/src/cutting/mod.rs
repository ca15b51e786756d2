//! Simplicity of cusp arcs, shortcut elements, gaps and derived sequences.

pub mod catalog;
pub mod classify;
pub mod expansion;
pub mod farey;
pub mod gap;

pub use catalog::{Catalog, CatalogEntry, Lookup};
pub use classify::{CrossingOracle, Cutter, PointClass};
pub use expansion::{DerivedExpansion, Step, StepRecord, Terminal};
pub use gap::{compute_g, gap, Gap, Origin, Side, SymbolicInterval, SymbolicPoint};
