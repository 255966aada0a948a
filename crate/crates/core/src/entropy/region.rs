//! Exact membership tests for the closed regions under a staircase or hull.

use crate::geom::{orient2d, orient3d, Point2, Point3};
use crate::hull3d::UpperHull3;
use crate::maxima::{maxima_oracle, OracleMethod};

/// The closed region weakly dominated by some input point.
pub struct Staircase {
    /// Maximal points, increasing x (so decreasing y).
    steps: Vec<Point2>,
}

impl Staircase {
    pub fn new(points: &[Point2]) -> Self {
        let m = maxima_oracle(points, OracleMethod::Sortscan).expect("oracle is total");
        Staircase { steps: m.maximal.iter().map(|&i| points[i]).collect() }
    }

    pub fn covers(&self, c: &Point2) -> bool {
        let i = self.steps.partition_point(|q| q.x < c.x);
        i < self.steps.len() && self.steps[i].y >= c.y
    }
}

/// The closed region on or below the upper hull, within its x-range.
pub struct UnderHull2 {
    verts: Vec<Point2>,
}

impl UnderHull2 {
    pub fn new(points: &[Point2]) -> Self {
        let h = crate::hull2d::monotone_chain(points);
        UnderHull2 { verts: h.iter().map(|&i| points[i]).collect() }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.verts
    }

    pub fn covers(&self, c: &Point2) -> bool {
        let v = &self.verts;
        let (Some(first), Some(last)) = (v.first(), v.last()) else { return false };
        if c.x < first.x || c.x > last.x {
            return false;
        }
        if v.len() == 1 {
            return c.y <= first.y;
        }
        let e = v.partition_point(|q| q.x < c.x).clamp(1, v.len() - 1);
        orient2d(&v[e - 1], &v[e], c) <= 0
    }
}

/// The closed region on or below the upper hull, over its projection.
pub struct UnderHull3<'a> {
    points: &'a [Point3],
    hull: UpperHull3,
}

impl<'a> UnderHull3<'a> {
    pub fn new(points: &'a [Point3], hull: UpperHull3) -> Self {
        UnderHull3 { points, hull }
    }

    pub fn covers(&self, c: &Point3) -> bool {
        let p = self.points;
        let q = c.xy();
        let over = self.hull.facets.iter().any(|f| {
            (0..3).all(|i| orient2d(&p[f[i]].xy(), &p[f[(i + 1) % 3]].xy(), &q) >= 0)
        });
        over && self.hull.facets.iter().all(|f| orient3d(&p[f[0]], &p[f[1]], &p[f[2]], c) <= 0)
    }
}
