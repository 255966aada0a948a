use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinate axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        match i {
            0 => Axis::X,
            1 => Axis::Y,
            2 => Axis::Z,
            _ => panic!("axis index {i} out of range"),
        }
    }
}

/// Fixed-dimension point with indexable coordinates.
pub trait Coords: Copy + Send + Sync {
    const DIM: usize;
    fn coord(&self, axis: usize) -> f64;
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(v))
    }
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        Ok(Point2 { x: finite(x)?, y: finite(y)? })
    }
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Ok(Point3 { x: finite(x)?, y: finite(y)?, z: finite(z)? })
    }

    /// Projection to the xy-plane.
    pub fn xy(&self) -> Point2 {
        Point2 { x: self.x, y: self.y }
    }
}

impl Coords for Point2 {
    const DIM: usize = 2;
    #[inline]
    fn coord(&self, axis: usize) -> f64 {
        match axis {
            0 => self.x,
            1 => self.y,
            _ => panic!("axis {axis} out of range for Point2"),
        }
    }
}

impl Coords for Point3 {
    const DIM: usize = 3;
    #[inline]
    fn coord(&self, axis: usize) -> f64 {
        match axis {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("axis {axis} out of range for Point3"),
        }
    }
}

/// `p` dominates `q` when it is strictly larger on every axis.
pub fn dominates<P: Coords>(p: &P, q: &P) -> bool {
    (0..P::DIM).all(|a| p.coord(a) > q.coord(a))
}

/// Ordered, finite points. Point ids are indices into the sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSequence<P> {
    points: Vec<P>,
    general_position: bool,
}

impl<P: Coords> PointSequence<P> {
    /// Wraps points, recording whether every axis has pairwise distinct coordinates.
    pub fn new(points: Vec<P>) -> Result<Self> {
        for p in &points {
            for a in 0..P::DIM {
                finite(p.coord(a))?;
            }
        }
        let general_position = distinct_per_axis(&points);
        Ok(PointSequence { points, general_position })
    }

    /// Like [`PointSequence::new`] but rejects repeated coordinates.
    pub fn distinct(points: Vec<P>) -> Result<Self> {
        let s = Self::new(points)?;
        if !s.general_position {
            return Err(Error::Degenerate("repeated coordinate on some axis".into()));
        }
        Ok(s)
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn into_points(self) -> Vec<P> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn general_position(&self) -> bool {
        self.general_position
    }

    /// Same points in the order given by `perm` (a permutation of ids).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let points = perm.iter().map(|&i| self.points[i]).collect();
        PointSequence { points, general_position: self.general_position }
    }
}

fn distinct_per_axis<P: Coords>(points: &[P]) -> bool {
    let mut vals: Vec<f64> = Vec::with_capacity(points.len());
    for a in 0..P::DIM {
        vals.clear();
        vals.extend(points.iter().map(|p| p.coord(a)));
        vals.sort_by(f64::total_cmp);
        if vals.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_finite_rejected() {
        assert!(Point2::new(f64::NAN, 0.0).is_err());
        assert!(Point3::new(0.0, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn dominance_is_strict() {
        let p = |x, y| Point2 { x, y };
        assert!(dominates(&p(2.0, 3.0), &p(1.0, 1.0)));
        assert!(!dominates(&p(2.0, 1.0), &p(1.0, 2.0)));
        assert!(!dominates(&p(1.0, 1.0), &p(1.0, 1.0)));
        assert!(!dominates(&p(1.0, 2.0), &p(1.0, 1.0)));
    }

    #[test]
    fn general_position_flag() {
        let a = PointSequence::new(vec![Point2 { x: 0.0, y: 1.0 }, Point2 { x: 1.0, y: 1.0 }]).unwrap();
        assert!(!a.general_position());
        assert!(PointSequence::distinct(a.into_points()).is_err());
    }
}
