//! Points, boxes, simplices, exact predicates and the cost meter.

mod compare;
pub mod exact;
mod meter;
mod point;
mod predicates;
mod select;
mod shapes;

pub use compare::{CoordCompare, PointsCompare};
pub use meter::CostMeter;
pub use point::{dominates, Axis, Coords, Point2, Point3, PointSequence};
pub use predicates::{orient2d, orient2d_exact, orient3d, orient3d_cmp};
pub use select::select_kth;
pub use shapes::{BoxD, SimplexD};
