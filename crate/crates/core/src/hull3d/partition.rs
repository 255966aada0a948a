//! Box partitions by cyclic-axis k-d splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{select_kth, BoxD, Coords, CostMeter, Point3};

/// Number of random planes behind `crossing_stat`.
pub const CROSSING_PLANES: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Partition3 {
    pub r: usize,
    pub subsets: Vec<Vec<usize>>,
    /// Bounding box of each subset.
    pub cells: Vec<BoxD>,
    /// Largest number of cells crossed by one of the sampled planes.
    pub crossing_stat: Option<usize>,
}

/// Splits `points[ids]` into exactly `r` subsets. The cell count is halved at
/// every level (ceil/floor) and the points are split in the same proportion
/// by the coordinate of the level's axis.
pub fn kd_partition3(points: &[Point3], ids: &[usize], r: usize, seed: u64, meter: &mut CostMeter) -> Result<Partition3> {
    let mut p = kd_cells(points, ids, r, seed, meter)?;
    p.crossing_stat = Some(crossing_stat(&p.cells, seed));
    Ok(p)
}

pub(crate) fn kd_cells(points: &[Point3], ids: &[usize], r: usize, seed: u64, meter: &mut CostMeter) -> Result<Partition3> {
    if r == 0 || r > ids.len() {
        return Err(Error::InvalidSpec(format!("cannot split {} points into {r} cells", ids.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = ids.to_vec();
    let mut subsets = Vec::with_capacity(r);
    split(points, &mut work, r, 0, &mut rng, meter, &mut subsets);
    let cells = subsets
        .iter()
        .map(|s: &Vec<usize>| {
            let coords: Vec<[f64; 3]> = s.iter().map(|&i| [points[i].x, points[i].y, points[i].z]).collect();
            BoxD::bounding(coords.iter().map(|c| &c[..])).expect("cells are nonempty")
        })
        .collect();
    Ok(Partition3 { r, subsets, cells, crossing_stat: None })
}

fn split<R: Rng>(
    points: &[Point3],
    ids: &mut [usize],
    r: usize,
    depth: usize,
    rng: &mut R,
    meter: &mut CostMeter,
    out: &mut Vec<Vec<usize>>,
) {
    if r == 1 {
        out.push(ids.to_vec());
        return;
    }
    let (r1, r2) = (r.div_ceil(2), r / 2);
    let m = ids.len();
    let k = ((m * r1 + r / 2) / r).clamp(r1, m - r2);
    let axis = depth % 3;
    select_kth(ids, k - 1, |&a, &b| points[a].coord(axis) < points[b].coord(axis), meter, rng).expect("rank in range");
    let (lo, hi) = ids.split_at_mut(k);
    split(points, lo, r1, depth + 1, rng, meter, out);
    split(points, hi, r2, depth + 1, rng, meter, out);
}

/// Samples planes through random points of the overall bounding box with
/// random normals and reports the most cells one plane meets.
pub fn crossing_stat(cells: &[BoxD], seed: u64) -> usize {
    let Some(first) = cells.first() else { return 0 };
    let (mut lo, mut hi) = (first.lo().to_vec(), first.hi().to_vec());
    for c in cells {
        for a in 0..3 {
            lo[a] = lo[a].min(c.lo()[a]);
            hi[a] = hi[a].max(c.hi()[a]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    (0..CROSSING_PLANES)
        .map(|_| {
            let o: Vec<f64> = (0..3).map(|a| rng.random_range(lo[a]..=hi[a])).collect();
            let nrm: Vec<f64> = (0..3).map(|_| StandardNormal.sample(&mut rng)).collect();
            cells
                .iter()
                .filter(|c| {
                    let side = |p: &[f64]| (0..3).map(|a| nrm[a] * (p[a] - o[a])).sum::<f64>();
                    let s: Vec<f64> = c.corners().iter().map(|p| side(p)).collect();
                    s.iter().any(|&v| v > 0.0) && s.iter().any(|&v| v < 0.0)
                })
                .count()
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> Vec<Point3> {
        (0..n)
            .map(|i| {
                let t = i as f64 + 0.5;
                Point3 { x: (t * 0.618).fract(), y: (t * 0.414).fract(), z: (t * 0.732).fract() }
            })
            .collect()
    }

    #[test]
    fn one_cell_is_bounding_box() {
        let pts = grid(20);
        let ids: Vec<usize> = (0..20).collect();
        let p = kd_partition3(&pts, &ids, 1, 0, &mut CostMeter::new()).unwrap();
        assert_eq!(p.subsets.len(), 1);
        let coords: Vec<[f64; 3]> = pts.iter().map(|q| [q.x, q.y, q.z]).collect();
        assert_eq!(p.cells[0], BoxD::bounding(coords.iter().map(|c| &c[..])).unwrap());
    }

    #[test]
    fn eight_equal_cells() {
        let pts = grid(64);
        let ids: Vec<usize> = (0..64).collect();
        let p = kd_partition3(&pts, &ids, 8, 1, &mut CostMeter::new()).unwrap();
        assert!(p.subsets.iter().all(|s| s.len() == 8));
        for (s, c) in p.subsets.iter().zip(&p.cells) {
            assert!(s.iter().all(|&i| c.contains(&[pts[i].x, pts[i].y, pts[i].z])));
        }
    }

    #[test]
    fn sizes_within_band() {
        let pts = grid(1000);
        let ids: Vec<usize> = (0..1000).collect();
        for r in [3, 7, 10, 33, 100] {
            let p = kd_partition3(&pts, &ids, r, 2, &mut CostMeter::new()).unwrap();
            assert_eq!(p.subsets.len(), r);
            let mut all: Vec<usize> = p.subsets.concat();
            all.sort_unstable();
            assert_eq!(all, ids);
            for s in &p.subsets {
                assert!(s.len() >= 1000 / (2 * r) && s.len() <= (2000usize).div_ceil(r), "r={r} size={}", s.len());
            }
        }
    }
}
