use num_rational::BigRational;
use num_traits::Signed;

use super::partition::Problem;
use crate::error::{Error, Result};
use crate::geom::Point2;

/// Largest input the set-partition search accepts.
pub const BRUTE_MAX: usize = 12;

fn rat(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite coordinate")
}

/// Upper hull as exact vertices, increasing x.
fn exact_hull(points: &[Point2]) -> Vec<(BigRational, BigRational)> {
    crate::hull2d::monotone_chain(points).iter().map(|&i| (rat(points[i].x), rat(points[i].y))).collect()
}

/// Height of the upper hull above `x`, for `x` within its range.
fn hull_height(h: &[(BigRational, BigRational)], x: &BigRational) -> BigRational {
    if h.len() == 1 {
        return h[0].1.clone();
    }
    let e = h.partition_point(|v| &v.0 < x).clamp(1, h.len() - 1);
    let (a, b) = (&h[e - 1], &h[e]);
    &a.1 + (&b.1 - &a.1) * (x - &a.0) / (&b.0 - &a.0)
}

/// Minimum entropy over all set partitions whose non-singleton blocks are
/// respectful. A maxima block is respectful when the top corner of its
/// bounding box is weakly dominated by an input point. A hull block with
/// abscissas `xl..xr` is respectful when it lies on or below the chord
/// joining the hull points above `xl` and `xr`, so that the trapezoid under
/// that chord encloses it inside the closed region under the hull.
pub fn structural_entropy_bruteforce(points: &[Point2], problem: Problem) -> Result<f64> {
    let n = points.len();
    if n > BRUTE_MAX {
        return Err(Error::TooLarge { n, max: BRUTE_MAX });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let full = (1usize << n) - 1;
    let members = |mask: usize| (0..n).filter(move |i| mask >> i & 1 == 1);
    let ok: Vec<bool> = match problem {
        Problem::Maxima2d => (0..=full)
            .map(|m| {
                let cx = members(m).map(|i| points[i].x).fold(f64::NEG_INFINITY, f64::max);
                let cy = members(m).map(|i| points[i].y).fold(f64::NEG_INFINITY, f64::max);
                points.iter().any(|s| s.x >= cx && s.y >= cy)
            })
            .collect(),
        Problem::Upperhull2d => {
            let h = exact_hull(points);
            let ex: Vec<(BigRational, BigRational)> = points.iter().map(|p| (rat(p.x), rat(p.y))).collect();
            (0..=full)
                .map(|m| {
                    let l = members(m).min_by(|&a, &b| points[a].x.total_cmp(&points[b].x));
                    let r = members(m).max_by(|&a, &b| points[a].x.total_cmp(&points[b].x));
                    let (Some(l), Some(r)) = (l, r) else { return true };
                    let a = (ex[l].0.clone(), hull_height(&h, &ex[l].0));
                    let b = (ex[r].0.clone(), hull_height(&h, &ex[r].0));
                    members(m).all(|i| {
                        let (px, py) = &ex[i];
                        let cross = (&b.0 - &a.0) * (py - &a.1) - (&b.1 - &a.1) * (px - &a.0);
                        !cross.is_positive()
                    })
                })
                .collect()
        }
        p => return Err(Error::InvalidSpec(format!("no brute-force entropy for {p:?}"))),
    };
    // best[m]: minimal contribution of a respectful partition of mask m.
    let nf = n as f64;
    let cost = |m: usize| {
        let s = m.count_ones() as f64;
        s / nf * (nf / s).log2()
    };
    let mut best = vec![f64::INFINITY; full + 1];
    best[0] = 0.0;
    for m in 1..=full {
        let low = m & m.wrapping_neg();
        let rest = m ^ low;
        // Enumerate blocks containing the lowest member of m.
        let mut sub = rest;
        loop {
            let block = sub | low;
            if block.count_ones() == 1 || ok[block] {
                let v = cost(block) + best[m ^ block];
                if v < best[m] {
                    best[m] = v;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    Ok(best[full].max(0.0))
}
