use crate::geom::Point2;
use crate::maxima::{maxima_oracle, OracleMethod};

/// Per-point slab sizes `|F(p)|`. The maximal points dominating `p`
/// (a maximal point counts as dominating itself) form a run `q_i..q_l` of the
/// staircase; `F(p)` is the set of points strictly inside the slab between
/// `q_{i-1}.x` and `q_{l+1}.x`, with infinite sentinels at both ends.
pub fn f_sets(points: &[Point2]) -> Vec<usize> {
    if points.is_empty() {
        return Vec::new();
    }
    let stairs = maxima_oracle(points, OracleMethod::Sortscan).expect("oracle is total");
    let mut is_max = vec![false; points.len()];
    for &i in &stairs.maximal {
        is_max[i] = true;
    }
    let q: Vec<Point2> = stairs.maximal.iter().map(|&i| points[i]).collect();
    let mut xs: Vec<f64> = points.iter().map(|p| p.x).collect();
    xs.sort_by(f64::total_cmp);
    // Points with x strictly inside (lo, hi).
    let strictly_between = |lo: f64, hi: f64| xs.partition_point(|&x| x < hi) - xs.partition_point(|&x| x <= lo);
    points
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let (i, l) = if is_max[k] {
                let i = q.partition_point(|s| s.x < p.x);
                (i, i)
            } else {
                // x increases and y decreases along the staircase.
                (q.partition_point(|s| s.x <= p.x), q.partition_point(|s| s.y > p.y) - 1)
            };
            let lo = if i == 0 { f64::NEG_INFINITY } else { q[i - 1].x };
            let hi = q.get(l + 1).map_or(f64::INFINITY, |s| s.x);
            strictly_between(lo, hi)
        })
        .collect()
}

/// `F(S) = sum_p log2(n / |F(p)|)`.
pub fn f_measure(points: &[Point2]) -> f64 {
    let n = points.len() as f64;
    f_sets(points).into_iter().map(|f| (n / f as f64).log2()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2 { x, y }
    }

    #[test]
    fn staircase_slabs_hold_one_point_each() {
        let s = [p(0.0, 3.0), p(1.0, 2.0), p(2.0, 1.0), p(3.0, 0.0)];
        assert_eq!(f_sets(&s), vec![1, 1, 1, 1]);
        assert!((f_measure(&s) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn single_point() {
        assert_eq!(f_measure(&[p(0.5, 0.5)]), 0.0);
    }

    #[test]
    fn dominated_by_every_maximal_point() {
        let s = [p(0.0, 0.0), p(1.0, 3.0), p(3.0, 1.0)];
        assert_eq!(f_sets(&s), vec![3, 2, 1]);
    }
}
