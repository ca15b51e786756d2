//! Reports on gap widths and dimensions, and a picture of the gaps.

pub mod boxcount;
pub mod limit;
pub mod mcshane;
pub mod render;

pub use boxcount::{count_boxes, ClosedArc, DimensionReport, ScaleCount, Window, BIRMAN_SERIES_LEVELS};
pub use limit::{limit_set_dimension, LimitSetModel, LIMIT_SET_LEVELS};
pub use mcshane::{ClassAggregate, McShaneReport, McShaneSummary, PartialSum};
pub use render::{drawn_widths, gap_records, render_gaps, GapRecord};
