use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Point3, PointSequence};

/// Horizontal segment from `(x0, y)` to `(x1, y)` with `x0 < x1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HSeg {
    pub x0: f64,
    pub x1: f64,
    pub y: f64,
}

/// Vertical segment from `(x, y0)` to `(x, y1)` with `y0 < y1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VSeg {
    pub x: f64,
    pub y0: f64,
    pub y1: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SegmentSet {
    pub horizontal: Vec<HSeg>,
    pub vertical: Vec<VSeg>,
}

/// Closed axis-aligned rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub xlo: f64,
    pub xhi: f64,
    pub ylo: f64,
    pub yhi: f64,
}

/// Off-line orthogonal range reporting input: points and query rectangles.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RangeInstance {
    pub points: Vec<Point2>,
    pub rects: Vec<Rect>,
}

fn check_distinct(mut v: Vec<f64>, what: &str) -> Result<()> {
    if let Some(bad) = v.iter().find(|c| !c.is_finite()) {
        return Err(Error::NonFinite(*bad));
    }
    v.sort_by(f64::total_cmp);
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Degenerate(format!("repeated {what} coordinate {}", w[0])));
    }
    Ok(())
}

impl SegmentSet {
    /// Endpoints ordered and every x value (and every y value) distinct across the set.
    pub fn validate(&self) -> Result<()> {
        if self.horizontal.iter().any(|h| !(h.x0 < h.x1)) || self.vertical.iter().any(|v| !(v.y0 < v.y1)) {
            return Err(Error::Degenerate("segment endpoints must be ordered and distinct".into()));
        }
        let xs = self.horizontal.iter().flat_map(|h| [h.x0, h.x1]).chain(self.vertical.iter().map(|v| v.x));
        check_distinct(xs.collect(), "x")?;
        let ys = self.horizontal.iter().map(|h| h.y).chain(self.vertical.iter().flat_map(|v| [v.y0, v.y1]));
        check_distinct(ys.collect(), "y")
    }

    pub fn len(&self) -> usize {
        self.horizontal.len() + self.vertical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl RangeInstance {
    pub fn validate(&self) -> Result<()> {
        if self.rects.iter().any(|r| !(r.xlo < r.xhi && r.ylo < r.yhi)) {
            return Err(Error::Degenerate("rectangle sides must be ordered and distinct".into()));
        }
        let xs = self.points.iter().map(|p| p.x).chain(self.rects.iter().flat_map(|r| [r.xlo, r.xhi]));
        check_distinct(xs.collect(), "x")?;
        let ys = self.points.iter().map(|p| p.y).chain(self.rects.iter().flat_map(|r| [r.ylo, r.yhi]));
        check_distinct(ys.collect(), "y")
    }

    pub fn len(&self) -> usize {
        self.points.len() + self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Any input the library's algorithms accept.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Instance {
    Points2(PointSequence<Point2>),
    Points3(PointSequence<Point3>),
    Segments(SegmentSet),
    Ranges(RangeInstance),
}

impl Instance {
    pub fn len(&self) -> usize {
        match self {
            Instance::Points2(s) => s.len(),
            Instance::Points3(s) => s.len(),
            Instance::Segments(s) => s.len(),
            Instance::Ranges(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points2(&self) -> Option<&PointSequence<Point2>> {
        match self {
            Instance::Points2(s) => Some(s),
            _ => None,
        }
    }

    pub fn points3(&self) -> Option<&PointSequence<Point3>> {
        match self {
            Instance::Points3(s) => Some(s),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Points2(_) => "points2",
            Instance::Points3(_) => "points3",
            Instance::Segments(_) => "segments",
            Instance::Ranges(_) => "ranges",
        }
    }
}
