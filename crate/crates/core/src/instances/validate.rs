//! Nondegeneracy checks beyond per-axis distinctness.

use crate::geom::{orient2d, orient3d, Point2, Point3};

/// Largest 2-d input checked exhaustively for collinear triples.
pub const EXHAUSTIVE_2D: usize = 64;
/// Largest 3-d input checked exhaustively for coplanar quadruples.
pub const EXHAUSTIVE_3D: usize = 48;

pub fn no_three_collinear(p: &[Point2]) -> bool {
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient2d(&p[i], &p[j], &p[k]) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn no_four_coplanar(p: &[Point3]) -> bool {
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    if orient3d(&p[i], &p[j], &p[k], &p[l]) == 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_degeneracy() {
        let p = |x, y| Point2 { x, y };
        assert!(!no_three_collinear(&[p(0.0, 0.0), p(1.0, 1.0), p(3.0, 3.0)]));
        assert!(no_three_collinear(&[p(0.0, 0.0), p(1.0, 1.0), p(3.0, 3.5)]));
        let q = |x, y, z| Point3 { x, y, z };
        let flat = [q(0.0, 0.0, 0.0), q(1.0, 0.0, 0.0), q(0.0, 1.0, 0.0), q(0.3, 0.7, 0.0)];
        assert!(!no_four_coplanar(&flat));
    }
}
