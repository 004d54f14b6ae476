//! SINR link scheduling and capacity maximization with oblivious power
//! assignments.
//!
//! The crate covers feasibility checking (affectance, the SINR condition and
//! power-control feasibility), conflict graphs over links, approximation
//! algorithms for scheduling and capacity, exhaustive oracles for small
//! instances, and reproducible instance generators.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod format;
pub mod gen;
pub mod graphs;
pub mod instance;
pub mod metric;
pub mod numeric;
pub mod oracle;
pub mod schedule;
pub mod sinr;

pub use error::{Result, SinrError};
pub use instance::{Instance, Link, Mode, Point, PowerAssignment, Precision};
pub use metric::{FadingParams, MetricSpec};
pub use numeric::{LogScalar, Measure};
pub use schedule::{CapacityResult, Schedule};
