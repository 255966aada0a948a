//! 2-d upper hull by pruned marriage-before-conquest.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orient2d, select_kth, CostMeter, Point2, PointSequence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperHull2 {
    /// Hull vertex ids in increasing x.
    pub vertices: Vec<usize>,
    pub meter: CostMeter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullOracle {
    MonotoneChain,
    Bruteforce,
}

pub fn hull2d(seq: &PointSequence<Point2>, seed: u64) -> Result<UpperHull2> {
    if seq.len() < 2 {
        return Err(Error::TooFewPoints { need: 2, got: seq.len() });
    }
    if !seq.general_position() {
        return Err(Error::Degenerate("hull2d needs distinct x and y coordinates".into()));
    }
    let pts = seq.points();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut meter = CostMeter::new();
    let mut ids: Vec<usize> = (0..pts.len()).collect();
    let mut vertices = Vec::new();
    meter.timed(|m| recurse(pts, &mut ids, m, &mut rng, &mut vertices));
    Ok(UpperHull2 { vertices, meter })
}

fn recurse<R: Rng + ?Sized>(pts: &[Point2], ids: &mut [usize], meter: &mut CostMeter, rng: &mut R, out: &mut Vec<usize>) {
    if ids.len() <= 2 {
        base(pts, ids, meter, out);
        return;
    }
    let (lo, hi) = extremes_x(pts, ids, meter);
    let (pl, pr) = (ids[lo], ids[hi]);
    let mut kept = 0;
    for i in 0..ids.len() {
        let p = ids[i];
        if p == pl || p == pr || meter.orient2d(&pts[pl], &pts[pr], &pts[p]) >= 0 {
            ids.swap(i, kept);
            kept += 1;
        }
    }
    let ids = &mut ids[..kept];
    if ids.len() <= 2 {
        base(pts, ids, meter, out);
        return;
    }

    let k = ids.len().div_ceil(2) - 1;
    select_kth(ids, k, |&a, &b| pts[a].x < pts[b].x, meter, rng).expect("rank in range");
    let (left, right) = ids.split_at_mut(k + 1);
    let (q, q2) = bridge(pts, left, right, meter, rng);

    // Everything strictly between the bridge endpoints lies under the bridge.
    let kl = retain(left, |p| p == q || meter.less(pts[p].x, pts[q].x));
    let kr = retain(right, |p| p == q2 || meter.less(pts[q2].x, pts[p].x));
    recurse(pts, &mut left[..kl], meter, rng, out);
    recurse(pts, &mut right[..kr], meter, rng, out);
}

fn retain(ids: &mut [usize], mut keep: impl FnMut(usize) -> bool) -> usize {
    let mut k = 0;
    for i in 0..ids.len() {
        if keep(ids[i]) {
            ids.swap(i, k);
            k += 1;
        }
    }
    k
}

fn base(pts: &[Point2], ids: &[usize], meter: &mut CostMeter, out: &mut Vec<usize>) {
    match *ids {
        [] => {}
        [a] => out.push(a),
        [a, b] => {
            if meter.less(pts[a].x, pts[b].x) {
                out.extend([a, b]);
            } else {
                out.extend([b, a]);
            }
        }
        _ => unreachable!("base case has at most two points"),
    }
}

/// Positions of the leftmost and rightmost points, scanning pairs (about 3n/2 comparisons).
fn extremes_x(pts: &[Point2], ids: &[usize], meter: &mut CostMeter) -> (usize, usize) {
    let (mut lo, mut hi) = (0, 0);
    let mut i = 1;
    if ids.len() % 2 == 0 {
        if meter.less(pts[ids[0]].x, pts[ids[1]].x) {
            hi = 1;
        } else {
            lo = 1;
        }
        i = 2;
    }
    while i + 1 < ids.len() {
        let (a, b) = if meter.less(pts[ids[i]].x, pts[ids[i + 1]].x) { (i, i + 1) } else { (i + 1, i) };
        if meter.less(pts[ids[a]].x, pts[ids[lo]].x) {
            lo = a;
        }
        if meter.less(pts[ids[hi]].x, pts[ids[b]].x) {
            hi = b;
        }
        i += 2;
    }
    (lo, hi)
}

/// Upper-hull edge between the `left` and `right` groups (every left point has
/// smaller x than every right point), by randomized incremental LP in the dual.
fn bridge<R: Rng + ?Sized>(
    pts: &[Point2],
    left: &[usize],
    right: &[usize],
    meter: &mut CostMeter,
    rng: &mut R,
) -> (usize, usize) {
    let mut order: Vec<(usize, bool)> = left.iter().map(|&i| (i, true)).chain(right.iter().map(|&i| (i, false))).collect();
    order.shuffle(rng);
    let fl = order.iter().position(|o| o.1).expect("left side nonempty");
    let fr = order.iter().position(|o| !o.1).expect("right side nonempty");
    let (mut l, mut r) = (order[fl].0, order[fr].0);
    let mut seen_l = vec![l];
    let mut seen_r = vec![r];
    for (idx, &(p, is_left)) in order.iter().enumerate() {
        if idx == fl || idx == fr {
            continue;
        }
        if meter.orient2d(&pts[l], &pts[r], &pts[p]) > 0 {
            // The new optimum passes through p; only the opposite side can bind.
            if is_left {
                l = p;
                r = best(&seen_r, |b, c| meter.orient2d(&pts[p], &pts[b], &pts[c]) > 0);
            } else {
                r = p;
                l = best(&seen_l, |b, c| meter.orient2d(&pts[b], &pts[p], &pts[c]) > 0);
            }
        }
        if is_left {
            seen_l.push(p);
        } else {
            seen_r.push(p);
        }
    }
    (l, r)
}

fn best(cands: &[usize], mut better: impl FnMut(usize, usize) -> bool) -> usize {
    let mut b = cands[0];
    for &c in &cands[1..] {
        if better(b, c) {
            b = c;
        }
    }
    b
}

/// The upper-hull edge of `points` crossing the vertical line `x = x_m`;
/// points with `x <= x_m` count as left.
pub fn upper_bridge(points: &[Point2], x_m: f64, seed: u64, meter: &mut CostMeter) -> Result<(usize, usize)> {
    let (left, right): (Vec<usize>, Vec<usize>) = (0..points.len()).partition(|&i| points[i].x <= x_m);
    if left.is_empty() || right.is_empty() {
        return Err(Error::AllOnOneSide(x_m));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(bridge(points, &left, &right, meter, &mut rng))
}

/// Sort-and-scan upper hull; ids in increasing x.
pub fn monotone_chain(points: &[Point2]) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..points.len()).collect();
    ids.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(points[a].y.total_cmp(&points[b].y)));
    let mut h: Vec<usize> = Vec::new();
    for &p in &ids {
        while h.len() >= 2 && orient2d(&points[h[h.len() - 2]], &points[h[h.len() - 1]], &points[p]) >= 0 {
            h.pop();
        }
        h.push(p);
    }
    h
}

pub fn hull2d_oracle(points: &[Point2], method: HullOracle) -> UpperHull2 {
    let vertices = match method {
        HullOracle::MonotoneChain => monotone_chain(points),
        HullOracle::Bruteforce => bruteforce(points),
    };
    UpperHull2 { vertices, meter: CostMeter::new() }
}

/// Keeps each pair `p, q` (p left of q) with every other point strictly below line pq.
fn bruteforce(points: &[Point2]) -> Vec<usize> {
    let n = points.len();
    if n == 1 {
        return vec![0];
    }
    let mut on = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || points[i].x >= points[j].x {
                continue;
            }
            if (0..n).all(|k| k == i || k == j || orient2d(&points[i], &points[j], &points[k]) < 0) {
                on[i] = true;
                on[j] = true;
            }
        }
    }
    let mut v: Vec<usize> = (0..n).filter(|&i| on[i]).collect();
    v.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x));
    v
}

/// Full convex hull vertex ids (sorted) from the upper hulls of `S` and of `-S`.
pub fn convex_hull2d(seq: &PointSequence<Point2>, seed: u64) -> Result<(Vec<usize>, CostMeter)> {
    let upper = hull2d(seq, seed)?;
    let neg = PointSequence::new(seq.points().iter().map(|p| Point2 { x: -p.x, y: -p.y }).collect())?;
    let lower = hull2d(&neg, seed.wrapping_add(1))?;
    let mut v: Vec<usize> = upper.vertices.iter().chain(&lower.vertices).copied().collect();
    v.sort_unstable();
    v.dedup();
    let mut meter = upper.meter;
    meter += lower.meter;
    Ok((v, meter))
}

/// Checks the hull invariants: clockwise turns, increasing x, nothing above.
pub fn verify_upper_hull(points: &[Point2], vertices: &[usize]) -> bool {
    if vertices.windows(2).any(|w| points[w[0]].x >= points[w[1]].x) {
        return false;
    }
    if vertices.windows(3).any(|w| orient2d(&points[w[0]], &points[w[1]], &points[w[2]]) >= 0) {
        return false;
    }
    let (Some(&first), Some(&last)) = (vertices.first(), vertices.last()) else { return points.is_empty() };
    points.iter().all(|p| {
        if p.x < points[first].x || p.x > points[last].x {
            return false;
        }
        let e = vertices.partition_point(|&v| points[v].x < p.x);
        if e == 0 || e == vertices.len() {
            return true;
        }
        orient2d(&points[vertices[e - 1]], &points[vertices[e]], p) <= 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2 { x, y }).collect()
    }

    #[test]
    fn small_cases() {
        let s = PointSequence::new(p(&[(0.0, 0.0), (2.0, 2.0), (1.0, 0.5)])).unwrap();
        assert_eq!(hull2d(&s, 0).unwrap().vertices, vec![0, 1]);
        let s = PointSequence::new(p(&[(0.0, 0.0), (1.0, 3.0), (2.0, 0.5)])).unwrap();
        assert_eq!(hull2d(&s, 0).unwrap().vertices, vec![0, 1, 2]);
        let one = PointSequence::new(p(&[(0.0, 0.0)])).unwrap();
        assert!(matches!(hull2d(&one, 0), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn bridge_examples() {
        let mut m = CostMeter::new();
        assert_eq!(upper_bridge(&p(&[(0.0, 0.0), (2.0, 2.0)]), 1.0, 0, &mut m).unwrap(), (0, 1));
        let q = p(&[(0.0, 0.0), (1.0, 0.5), (2.0, 2.0)]);
        assert_eq!(upper_bridge(&q, 0.5, 0, &mut m).unwrap(), (0, 2));
        assert!(matches!(upper_bridge(&q, 5.0, 0, &mut m), Err(Error::AllOnOneSide(_))));
    }

    #[test]
    fn oracles_two_points() {
        let q = p(&[(1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(hull2d_oracle(&q, HullOracle::Bruteforce).vertices, vec![1, 0]);
        assert_eq!(hull2d_oracle(&q, HullOracle::MonotoneChain).vertices, vec![1, 0]);
    }
}
