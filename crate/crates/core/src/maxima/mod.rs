//! 2-d maxima by median split and dominance pruning, with witnesses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{dominates, select_kth, Axis, CoordCompare, CostMeter, Point2, PointSequence, PointsCompare};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximaResult {
    /// Maximal point ids, left to right.
    pub maximal: Vec<usize>,
    /// `(dominated id, maximal id that dominates it)`, sorted by the first entry.
    pub witness: Vec<(usize, usize)>,
    pub meter: CostMeter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    Bruteforce,
    Sortscan,
}

/// Runs the pruned median-split recursion on real coordinates.
pub fn maxima2d(seq: &PointSequence<Point2>, seed: u64) -> Result<MaximaResult> {
    if !seq.general_position() {
        return Err(Error::Degenerate("maxima2d needs distinct x and y coordinates".into()));
    }
    let mut meter = CostMeter::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cmp = PointsCompare::new(seq.points());
    let (maximal, witness) = meter.timed(|m| maxima2d_with(&mut cmp, m, &mut rng));
    Ok(MaximaResult { maximal, witness, meter })
}

/// The recursion in the comparison model: every access to the input goes
/// through `cmp`, and each answer is charged to `meter`.
pub fn maxima2d_with<C, R>(cmp: &mut C, meter: &mut CostMeter, rng: &mut R) -> (Vec<usize>, Vec<(usize, usize)>)
where
    C: CoordCompare + ?Sized,
    R: Rng + ?Sized,
{
    let n = cmp.len();
    let mut ids: Vec<usize> = (0..n).collect();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut maximal = Vec::new();
    recurse(&mut ids, cmp, meter, rng, &mut maximal, &mut parent);
    (maximal, compress(&mut parent))
}

fn recurse<C, R>(
    ids: &mut [usize],
    cmp: &mut C,
    meter: &mut CostMeter,
    rng: &mut R,
    maximal: &mut Vec<usize>,
    parent: &mut [usize],
) where
    C: CoordCompare + ?Sized,
    R: Rng + ?Sized,
{
    match ids.len() {
        0 => return,
        1 => {
            maximal.push(ids[0]);
            return;
        }
        _ => {}
    }
    let m = ids.len();
    let k = m.div_ceil(2) - 1;
    select_kth(ids, k, |&a, &b| cmp.less(a, b, Axis::X), meter, rng).expect("rank in range");
    let (left, right) = ids.split_at_mut(k + 1);

    let mut q = right[0];
    for &r in &right[1..] {
        meter.comparisons += 1;
        if cmp.less(q, r, Axis::Y) {
            q = r;
        }
    }

    // Left points already lie left of q, right points already lie below it:
    // one comparison decides each dominance test.
    let mut kl = 0;
    for i in 0..left.len() {
        let p = left[i];
        meter.comparisons += 1;
        meter.dominance_tests += 1;
        if cmp.less(p, q, Axis::Y) {
            parent[p] = q;
        } else {
            left.swap(i, kl);
            kl += 1;
        }
    }
    let mut kr = 0;
    for i in 0..right.len() {
        let p = right[i];
        if p == q {
            right.swap(i, kr);
            kr += 1;
            continue;
        }
        meter.comparisons += 1;
        meter.dominance_tests += 1;
        if cmp.less(p, q, Axis::X) {
            parent[p] = q;
        } else {
            right.swap(i, kr);
            kr += 1;
        }
    }
    recurse(&mut left[..kl], cmp, meter, rng, maximal, parent);
    recurse(&mut right[..kr], cmp, meter, rng, maximal, parent);
}

/// Follows witness links to their roots and returns the sorted non-root pairs.
fn compress(parent: &mut [usize]) -> Vec<(usize, usize)> {
    for i in 0..parent.len() {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut j = i;
        while parent[j] != r {
            let next = parent[j];
            parent[j] = r;
            j = next;
        }
    }
    (0..parent.len()).filter(|&i| parent[i] != i).map(|i| (i, parent[i])).collect()
}

/// Reference implementations.
pub fn maxima_oracle(points: &[Point2], method: OracleMethod) -> Result<MaximaResult> {
    let mut meter = CostMeter::new();
    let (maximal, witness) = match method {
        OracleMethod::Bruteforce => bruteforce(points, &mut meter),
        OracleMethod::Sortscan => sortscan_with(&mut PointsCompare::new(points), &mut meter),
    };
    Ok(MaximaResult { maximal, witness, meter })
}

fn bruteforce(points: &[Point2], meter: &mut CostMeter) -> (Vec<usize>, Vec<(usize, usize)>) {
    let n = points.len();
    let mut maximal: Vec<usize> = (0..n)
        .filter(|&i| {
            (0..n).all(|j| {
                meter.dominance_tests += 1;
                !dominates(&points[j], &points[i])
            })
        })
        .collect();
    maximal.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x));
    let witness = (0..n)
        .filter(|i| maximal.binary_search_by(|&m| points[m].x.total_cmp(&points[*i].x)).is_err())
        .map(|i| {
            let w = maximal.iter().copied().find(|&m| dominates(&points[m], &points[i]));
            (i, w.expect("a non-maximal point is dominated by a maximal one"))
        })
        .collect();
    (maximal, witness)
}

/// Sort by x descending and sweep the running maximum of y.
pub fn sortscan_with<C>(cmp: &mut C, meter: &mut CostMeter) -> (Vec<usize>, Vec<(usize, usize)>)
where
    C: CoordCompare + ?Sized,
{
    let mut ids: Vec<usize> = (0..cmp.len()).collect();
    ids.sort_by(|&a, &b| {
        if a == b {
            return std::cmp::Ordering::Equal;
        }
        meter.comparisons += 1;
        if cmp.less(b, a, Axis::X) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let mut maximal = Vec::new();
    let mut witness = Vec::new();
    let mut best: Option<usize> = None;
    for &p in &ids {
        match best {
            Some(b) => {
                meter.comparisons += 1;
                meter.dominance_tests += 1;
                if cmp.less(p, b, Axis::Y) {
                    witness.push((p, b));
                } else {
                    maximal.push(p);
                    best = Some(p);
                }
            }
            None => {
                maximal.push(p);
                best = Some(p);
            }
        }
    }
    maximal.reverse();
    witness.sort_unstable();
    (maximal, witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[(f64, f64)]) -> PointSequence<Point2> {
        PointSequence::new(v.iter().map(|&(x, y)| Point2 { x, y }).collect()).unwrap()
    }

    #[test]
    fn hand_example() {
        let s = seq(&[(1.0, 4.0), (2.0, 2.0), (3.0, 3.0), (4.0, 1.0)]);
        let r = maxima2d(&s, 1).unwrap();
        assert_eq!(r.maximal, vec![0, 2, 3]);
        assert_eq!(r.witness, vec![(1, 2)]);
    }

    #[test]
    fn single_point() {
        let r = maxima2d(&seq(&[(0.5, 0.5)]), 0).unwrap();
        assert_eq!(r.maximal, vec![0]);
        assert!(r.witness.is_empty());
        assert_eq!(r.meter.comparisons, 0);
    }

    #[test]
    fn degenerate_rejected() {
        assert!(maxima2d(&seq(&[(1.0, 1.0), (1.0, 2.0)]), 0).is_err());
    }

    #[test]
    fn oracle_special_cases() {
        let stair = seq(&[(3.0, 1.0), (1.0, 3.0), (2.0, 2.0)]);
        for m in [OracleMethod::Bruteforce, OracleMethod::Sortscan] {
            assert_eq!(maxima_oracle(stair.points(), m).unwrap().maximal, vec![1, 2, 0]);
        }
        let top = seq(&[(1.0, 1.0), (9.0, 9.0), (2.0, 0.5)]);
        for m in [OracleMethod::Bruteforce, OracleMethod::Sortscan] {
            let r = maxima_oracle(top.points(), m).unwrap();
            assert_eq!(r.maximal, vec![1]);
            assert_eq!(r.witness, vec![(0, 1), (2, 1)]);
        }
    }
}
