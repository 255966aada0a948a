#![allow(dead_code)]

use iogeom::geom::{Point2, PointSequence};

pub fn p(x: f64, y: f64) -> Point2 {
    Point2 { x, y }
}

/// Twelve points: three maximal points `q1=(4,12)`, `q2=(8,8)`, `q3=(12,4)`;
/// three points dominated by all of them, three dominated only by `q2` and
/// three dominated only by `q3`. Indices 0..2 are the `q`s, then
/// `p1..p9` in order.
pub fn staircase_fixture() -> Vec<Point2> {
    vec![
        p(4.0, 12.0),
        p(8.0, 8.0),
        p(12.0, 4.0),
        p(1.0, 1.0),
        p(2.0, 2.0),
        p(3.0, 3.0),
        p(5.0, 5.0),
        p(6.0, 6.0),
        p(7.0, 7.0),
        p(9.0, 0.5),
        p(10.0, 1.5),
        p(11.0, 2.5),
    ]
}

pub fn seq(points: Vec<Point2>) -> PointSequence<Point2> {
    PointSequence::new(points).unwrap()
}
