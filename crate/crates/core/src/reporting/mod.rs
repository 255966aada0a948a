//! Adaptive red/blue reporting and counting for orthogonal segment
//! intersection and off-line orthogonal range reporting.

mod adaptive;
mod kdtree;
mod relation;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::geom::CostMeter;

pub use adaptive::{count_adaptive, report_adaptive, safety_partition, safety_test, CountMode, Counts, PhaseStat, ReportConfig};
pub use kdtree::{kd_box_query, Canonical, Grouped, KdIndex, QueryMode, QueryResult};
pub use relation::{encode_relation, Color, Param, Range, Relation, RelationInstance};
pub use sweep::{direct_counts, direct_pairs, segint_sweep_oracle};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    /// `(red, blue)` index pairs, sorted.
    pub pairs: Vec<(usize, usize)>,
    #[serde(rename = "K")]
    pub k: usize,
    pub meter: CostMeter,
}
