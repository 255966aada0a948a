use serde::{Deserialize, Serialize};

use super::brute::{structural_entropy_bruteforce, BRUTE_MAX};
use super::fmeasure::f_measure;
use super::kd::kd_respectful_partition;
use super::partition::{Problem, RespectfulPartition};
use super::respect::vertical_partition;
use crate::error::Result;
use crate::geom::{Point2, PointSequence};

/// Difficulty measures of one 2-d instance, in bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// Smallest entropy among the respectful partitions at hand: the exact
    /// optimum for tiny inputs, else the best of the vertical, k-d and any
    /// supplied partition.
    pub h_partition: f64,
    pub h_vert: f64,
    pub h_kd: f64,
    /// Total `F(S)`, not divided by `n`.
    pub f_measure_bits: f64,
    pub n: usize,
    /// Number of maximal points or upper-hull vertices.
    pub h_output: usize,
}

impl EntropyReport {
    pub fn f_per_n(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.f_measure_bits / self.n as f64
        }
    }
}

/// Measures for `problem` (maxima or 2-d upper hull). `known` is an extra
/// respectful partition, such as the one a generator certifies.
pub fn entropy_report(
    seq: &PointSequence<Point2>,
    problem: Problem,
    known: Option<&RespectfulPartition>,
) -> Result<EntropyReport> {
    let pts = seq.points();
    let vert = vertical_partition(seq, problem)?;
    let kd = kd_respectful_partition(seq, problem)?;
    let h_vert = vert.entropy();
    let h_kd = kd.entropy();
    let h_partition = if pts.len() <= BRUTE_MAX {
        structural_entropy_bruteforce(pts, problem)?
    } else {
        known.map(RespectfulPartition::entropy).into_iter().fold(h_vert.min(h_kd), f64::min)
    };
    Ok(EntropyReport {
        h_partition,
        h_vert,
        h_kd,
        f_measure_bits: f_measure(pts),
        n: pts.len(),
        // One vertical block per extreme point.
        h_output: vert.subsets().len(),
    })
}
