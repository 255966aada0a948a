//! Instance-optimal algorithms for 2-d/3-d maxima, convex hulls and
//! red/blue reporting, instrumented to count comparisons and orientation tests.

pub mod adversary;
pub mod bench;
pub mod entropy;
pub mod error;
pub mod geom;
pub mod hull2d;
pub mod hull3d;
pub mod instances;
pub mod maxima;
pub mod par;
pub mod reporting;

pub use error::{Error, Result};
