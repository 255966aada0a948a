//! Difficulty measures: partition entropy, respectful partitions and the
//! `F(S)` slab measure.

mod brute;
mod fmeasure;
mod kd;
mod partition;
mod region;
mod report;
mod respect;

pub use brute::{structural_entropy_bruteforce, BRUTE_MAX};
pub use fmeasure::{f_measure, f_sets};
pub use kd::{kd_respectful_partition, KdNode, KdTree2};
pub use partition::{partition_entropy, Enclosure, Problem, RespectfulPartition};
pub use region::{Staircase, UnderHull2, UnderHull3};
pub use report::{entropy_report, EntropyReport};
pub use respect::{is_respectful2, is_respectful3, vertical_partition};
