use serde::{Deserialize, Serialize};

use super::point::{Point2, Point3};
use super::predicates::{orient2d, orient3d};
use crate::error::{Error, Result};

/// Closed axis-aligned box in any dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxD {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoxD {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        for (a, b) in lo.iter().zip(&hi) {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::NonFinite(if a.is_finite() { *b } else { *a }));
            }
            if a > b {
                return Err(Error::InvalidSpec(format!("box side [{a}, {b}] is empty")));
            }
        }
        Ok(BoxD { lo, hi })
    }

    /// Smallest box containing every point. `None` for no points.
    pub fn bounding<'a>(mut pts: impl Iterator<Item = &'a [f64]>) -> Option<Self> {
        let first = pts.next()?;
        let (mut lo, mut hi) = (first.to_vec(), first.to_vec());
        for p in pts {
            for (i, &c) in p.iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        Some(BoxD { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(c, (a, b))| a <= c && c <= b)
    }

    /// All `2^d` corners; corner `m` takes `hi` on axis `i` when bit `i` of `m` is set.
    pub fn corners(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        (0..1usize << d)
            .map(|m| (0..d).map(|i| if m >> i & 1 == 1 { self.hi[i] } else { self.lo[i] }).collect())
            .collect()
    }

    /// Corner that is maximal on every axis.
    pub fn top_corner(&self) -> &[f64] {
        &self.hi
    }
}

/// Closed simplex (triangle or tetrahedron).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SimplexD {
    Triangle([Point2; 3]),
    Tetrahedron([Point3; 4]),
}

impl SimplexD {
    pub fn triangle(v: [Point2; 3]) -> Result<Self> {
        if orient2d(&v[0], &v[1], &v[2]) == 0 {
            return Err(Error::Degenerate("collinear triangle".into()));
        }
        Ok(SimplexD::Triangle(v))
    }

    pub fn tetrahedron(v: [Point3; 4]) -> Result<Self> {
        if orient3d(&v[0], &v[1], &v[2], &v[3]) == 0 {
            return Err(Error::Degenerate("coplanar tetrahedron".into()));
        }
        Ok(SimplexD::Tetrahedron(v))
    }

    pub fn contains2(&self, p: &Point2) -> bool {
        let SimplexD::Triangle(v) = self else { return false };
        let s = orient2d(&v[0], &v[1], &v[2]);
        (0..3).all(|i| orient2d(&v[i], &v[(i + 1) % 3], p) * s >= 0)
    }

    pub fn contains3(&self, p: &Point3) -> bool {
        let SimplexD::Tetrahedron(v) = self else { return false };
        let faces = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 3, 1], [1, 2, 3, 0]];
        faces.iter().all(|f| {
            let s = orient3d(&v[f[0]], &v[f[1]], &v[f[2]], &v[f[3]]);
            orient3d(&v[f[0]], &v[f[1]], &v[f[2]], p) * s >= 0
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_basics() {
        let b = BoxD::new(vec![0.0, 1.0], vec![2.0, 3.0]).unwrap();
        assert!(b.contains(&[1.0, 3.0]));
        assert!(!b.contains(&[2.5, 2.0]));
        assert_eq!(b.corners().len(), 4);
        assert!(BoxD::new(vec![1.0], vec![0.0]).is_err());
        let pts = [[1.0, 5.0], [3.0, -1.0]];
        let bb = BoxD::bounding(pts.iter().map(|p| &p[..])).unwrap();
        assert_eq!(bb.lo(), &[1.0, -1.0]);
        assert_eq!(bb.hi(), &[3.0, 5.0]);
    }

    #[test]
    fn simplex_containment() {
        let t = SimplexD::triangle([
            Point2 { x: 0.0, y: 0.0 },
            Point2 { x: 0.0, y: 1.0 },
            Point2 { x: 1.0, y: 0.0 },
        ])
        .unwrap();
        assert!(t.contains2(&Point2 { x: 0.2, y: 0.2 }));
        assert!(t.contains2(&Point2 { x: 0.5, y: 0.5 }));
        assert!(!t.contains2(&Point2 { x: 0.6, y: 0.6 }));
        let o = Point3 { x: 0.0, y: 0.0, z: 0.0 };
        let tet = SimplexD::tetrahedron([
            o,
            Point3 { x: 1.0, y: 0.0, z: 0.0 },
            Point3 { x: 0.0, y: 1.0, z: 0.0 },
            Point3 { x: 0.0, y: 0.0, z: 1.0 },
        ])
        .unwrap();
        assert!(tet.contains3(&Point3 { x: 0.1, y: 0.1, z: 0.1 }));
        assert!(!tet.contains3(&Point3 { x: 0.5, y: 0.5, z: 0.5 }));
    }
}
