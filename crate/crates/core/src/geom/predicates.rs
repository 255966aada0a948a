//! Orientation predicates with exact signs.
//!
//! A floating-point evaluation is accepted when its magnitude clears a
//! forward error bound, otherwise the determinant is recomputed exactly.

use super::exact::{det2, det3, Dyadic};
use super::meter::CostMeter;
use super::point::{Point2, Point3};

const EPS: f64 = f64::EPSILON / 2.0;
// Generous multiples of the classical bounds; they only decide when to go exact.
const BOUND2: f64 = 8.0 * EPS;
const BOUND3: f64 = 16.0 * EPS;
// Below this the relative bounds stop meaning anything because of underflow.
const TINY: f64 = 1e-250;

#[inline]
fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Sign of `det [b - a; c - a]`: positive when `a, b, c` turn counter-clockwise.
pub fn orient2d(a: &Point2, b: &Point2, c: &Point2) -> i8 {
    let l = (b.x - a.x) * (c.y - a.y);
    let r = (b.y - a.y) * (c.x - a.x);
    let det = l - r;
    let bound = BOUND2 * (l.abs() + r.abs());
    if det.is_finite() && bound.is_finite() && bound > TINY && det.abs() > bound {
        return sign(det);
    }
    orient2d_exact(a, b, c)
}

pub fn orient2d_exact(a: &Point2, b: &Point2, c: &Point2) -> i8 {
    let d = |p: f64, q: f64| &Dyadic::from_f64(p) - &Dyadic::from_f64(q);
    det2(&d(b.x, a.x), &d(b.y, a.y), &d(c.x, a.x), &d(c.y, a.y)).signum()
}

/// Sign of `det [b - a; c - a; d - a]`: positive when `d` lies above the plane
/// through `a, b, c` taken counter-clockwise from above.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> i8 {
    det3_sign(a, b, c, d, a)
}

/// Compares the heights of `p` and `q` over the oriented plane `a, b, c`:
/// the sign of `orient3d(a, b, c, p) - orient3d(a, b, c, q)` as determinants.
pub fn orient3d_cmp(a: &Point3, b: &Point3, c: &Point3, p: &Point3, q: &Point3) -> i8 {
    det3_sign(a, b, c, p, q)
}

/// Sign of `det [b - a; c - a; p - q]`.
fn det3_sign(a: &Point3, b: &Point3, c: &Point3, p: &Point3, q: &Point3) -> i8 {
    let u = [b.x - a.x, b.y - a.y, b.z - a.z];
    let v = [c.x - a.x, c.y - a.y, c.z - a.z];
    let w = [p.x - q.x, p.y - q.y, p.z - q.z];
    let m0 = v[1] * w[2] - v[2] * w[1];
    let m1 = v[0] * w[2] - v[2] * w[0];
    let m2 = v[0] * w[1] - v[1] * w[0];
    let det = u[0] * m0 - u[1] * m1 + u[2] * m2;
    let perm = u[0].abs() * ((v[1] * w[2]).abs() + (v[2] * w[1]).abs())
        + u[1].abs() * ((v[0] * w[2]).abs() + (v[2] * w[0]).abs())
        + u[2].abs() * ((v[0] * w[1]).abs() + (v[1] * w[0]).abs());
    let bound = BOUND3 * perm;
    if det.is_finite() && bound.is_finite() && bound > TINY && det.abs() > bound {
        return sign(det);
    }
    det3_sign_exact(a, b, c, p, q)
}

fn det3_sign_exact(a: &Point3, b: &Point3, c: &Point3, p: &Point3, q: &Point3) -> i8 {
    let diff = |s: &Point3, t: &Point3| {
        [
            &Dyadic::from_f64(s.x) - &Dyadic::from_f64(t.x),
            &Dyadic::from_f64(s.y) - &Dyadic::from_f64(t.y),
            &Dyadic::from_f64(s.z) - &Dyadic::from_f64(t.z),
        ]
    };
    let (u, v, w) = (diff(b, a), diff(c, a), diff(p, q));
    det3(
        [&u[0], &u[1], &u[2]],
        [&v[0], &v[1], &v[2]],
        [&w[0], &w[1], &w[2]],
    )
    .signum()
}

impl CostMeter {
    /// Counted [`orient2d`].
    #[inline]
    pub fn orient2d(&mut self, a: &Point2, b: &Point2, c: &Point2) -> i8 {
        self.orient2d_calls += 1;
        orient2d(a, b, c)
    }

    /// Counted [`orient3d`].
    #[inline]
    pub fn orient3d(&mut self, a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> i8 {
        self.orient3d_calls += 1;
        orient3d(a, b, c, d)
    }

    /// Counted [`orient3d_cmp`]; charged as one orientation test.
    #[inline]
    pub fn orient3d_cmp(&mut self, a: &Point3, b: &Point3, c: &Point3, p: &Point3, q: &Point3) -> i8 {
        self.orient3d_calls += 1;
        orient3d_cmp(a, b, c, p, q)
    }

    /// Counted coordinate comparison `a < b`.
    #[inline]
    pub fn less(&mut self, a: f64, b: f64) -> bool {
        self.comparisons += 1;
        a < b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(x: f64, y: f64) -> Point2 {
        Point2 { x, y }
    }

    fn p3(x: f64, y: f64, z: f64) -> Point3 {
        Point3 { x, y, z }
    }

    #[test]
    fn basic_orientation() {
        assert_eq!(orient2d(&p2(0.0, 0.0), &p2(1.0, 0.0), &p2(0.0, 1.0)), 1);
        assert_eq!(orient2d(&p2(0.0, 0.0), &p2(0.0, 1.0), &p2(1.0, 0.0)), -1);
        assert_eq!(orient2d(&p2(0.0, 0.0), &p2(1.0, 1.0), &p2(2.0, 2.0)), 0);
        let o = p3(0.0, 0.0, 0.0);
        let (x, y) = (p3(1.0, 0.0, 0.0), p3(0.0, 1.0, 0.0));
        assert_eq!(orient3d(&o, &x, &y, &p3(0.3, 0.3, 1.0)), 1);
        assert_eq!(orient3d(&o, &x, &y, &p3(0.3, 0.3, -1.0)), -1);
        assert_eq!(orient3d(&o, &x, &y, &p3(5.0, -2.0, 0.0)), 0);
        assert_eq!(orient3d_cmp(&o, &x, &y, &p3(0.0, 0.0, 2.0), &p3(9.0, 9.0, 1.0)), 1);
    }

    #[test]
    fn near_collinear_resolved_exactly() {
        // c = a + t (b - a) nudged by one ulp in y.
        let a = p2(0.5, 0.5);
        let b = p2(12.0, 12.0);
        let c = p2(24.0, 24.0f64.next_up());
        assert_eq!(orient2d(&a, &b, &c), 1);
        let c = p2(24.0, 24.0f64.next_down());
        assert_eq!(orient2d(&a, &b, &c), -1);
        assert_eq!(orient2d(&a, &b, &p2(24.0, 24.0)), 0);
    }
}
