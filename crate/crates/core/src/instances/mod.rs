//! Instance families, generators, file I/O and nondegeneracy validation.

mod family;
mod generate;
pub mod io;
mod types;
pub mod validate;

pub use family::{Family, InstanceKind, InstanceSpec};
pub use generate::{generate, Generated};
pub use types::{HSeg, Instance, RangeInstance, Rect, SegmentSet, VSeg};
