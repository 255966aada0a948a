use serde::{Deserialize, Serialize};

use super::lp::{BelowOracle, MIN_GROUP};
use super::oracle::{upper_hull_of, UpperHull3};
use super::partition::kd_cells;
use crate::error::{Error, Result};
use crate::geom::{BoxD, CostMeter, Point3, PointSequence};
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hull3Config {
    /// Rounds run for `j = 0..=floor(log2(delta * log2 n))`.
    pub delta: f64,
    /// Cell counts are capped at `n^cap`.
    pub cap: f64,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for Hull3Config {
    fn default() -> Self {
        Hull3Config { delta: 0.25, cap: 0.5, seed: 0, exec: Execution::Sequential }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundStat {
    pub r: usize,
    pub before: usize,
    pub pruned: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hull3Result {
    pub hull: UpperHull3,
    pub rounds: Vec<RoundStat>,
    /// Ids removed by pruning, in round order.
    pub pruned: Vec<usize>,
}

/// Cell counts `2^(2^j)` for the rounds the configuration allows on `n` points.
pub fn round_sizes(n: usize, delta: f64, cap: f64) -> Vec<usize> {
    let t = delta * (n as f64).log2();
    if !(t >= 1.0) {
        return Vec::new();
    }
    let jmax = t.log2().floor() as u32;
    let limit = ((n as f64).powf(cap).floor() as usize).max(1);
    (0..=jmax)
        .map(|j| if j >= 6 { usize::MAX } else { 1usize << (1u32 << j) })
        .map(|r| r.min(limit))
        .filter(|&r| r >= 2)
        .collect()
}

/// Upper hull by rounds of partition-and-prune, then a direct hull of the survivors.
pub fn hull3d(seq: &PointSequence<Point3>, cfg: &Hull3Config) -> Result<Hull3Result> {
    let n = seq.len();
    if n < 3 {
        return Err(Error::TooFewPoints { need: 3, got: n });
    }
    if !seq.general_position() {
        return Err(Error::Degenerate("hull3d needs distinct coordinates on every axis".into()));
    }
    if !(cfg.delta > 0.0) || !(cfg.cap > 0.0 && cfg.cap <= 1.0) {
        return Err(Error::InvalidSpec(format!("delta {} / cap {} out of range", cfg.delta, cfg.cap)));
    }
    let pts = seq.points();
    let mut meter = CostMeter::new();
    let t0 = std::time::Instant::now();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut rounds = Vec::new();
    let mut pruned_all = Vec::new();
    for (j, r) in round_sizes(n, cfg.delta, cfg.cap).into_iter().enumerate() {
        let r = r.min(alive.len());
        if r < 2 {
            break;
        }
        let seed = cfg.seed.wrapping_add(0x1000 * (j as u64 + 1));
        let part = kd_cells(pts, &alive, r, seed, &mut meter)?;
        let probes = 8 * part.cells.len();
        let oracle = BelowOracle::build(pts, &alive, probes.max(MIN_GROUP), seed ^ 0xabc, cfg.exec, &mut meter)?;
        let verdicts = par::map(cfg.exec, &part.cells, |cell| {
            let mut m = CostMeter::new();
            let below = cell_below(&oracle, cell, &mut m);
            (below, m)
        });
        let before = alive.len();
        let mut keep = Vec::with_capacity(before);
        for (subset, (below, m)) in part.subsets.iter().zip(verdicts) {
            meter += m;
            if below {
                pruned_all.extend_from_slice(subset);
            } else {
                keep.extend_from_slice(subset);
            }
        }
        rounds.push(RoundStat { r, before, pruned: before - keep.len() });
        alive = keep;
    }
    let mut hull = upper_hull_of(pts, &alive, cfg.seed, &mut meter)?;
    meter.wall_ns = t0.elapsed().as_nanos() as u64;
    hull.meter = meter;
    Ok(Hull3Result { hull, rounds, pruned: pruned_all })
}

/// All eight corners strictly below; the highest corner is tried first.
fn cell_below(oracle: &BelowOracle<'_>, cell: &BoxD, meter: &mut CostMeter) -> bool {
    let mut corners = cell.corners();
    corners.sort_by(|a, b| b[2].total_cmp(&a[2]));
    let mut warm = oracle.warm();
    corners
        .iter()
        .all(|c| oracle.query(&Point3 { x: c[0], y: c[1], z: c[2] }, &mut warm, meter))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_schedule() {
        assert!(round_sizes(8, 0.25, 0.5).is_empty());
        assert_eq!(round_sizes(1 << 12, 0.25, 0.5), vec![2, 4]);
        assert_eq!(round_sizes(1 << 16, 0.25, 0.5), vec![2, 4, 16]);
        assert_eq!(round_sizes(1 << 16, 1.0, 0.5), vec![2, 4, 16, 256, 256]);
    }
}
