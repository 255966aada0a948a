use super::partition::{Enclosure, Problem, RespectfulPartition};
use super::region::{Staircase, UnderHull2, UnderHull3};
use crate::error::{Error, Result};
use crate::geom::{BoxD, Point2, Point3, PointSequence, SimplexD};

fn malformed(k: usize, i: usize) -> Error {
    Error::MalformedPartition(format!("point {i} lies outside the enclosure of block {k}"))
}

fn box_points2(b: &BoxD) -> Vec<Point2> {
    b.corners().iter().map(|c| Point2 { x: c[0], y: c[1] }).collect()
}

/// Whether every non-singleton enclosure lies in the closed region under the
/// staircase (maxima) or upper hull of `points`. A point outside its block's
/// enclosure is an error.
pub fn is_respectful2(part: &RespectfulPartition, points: &[Point2]) -> Result<bool> {
    if part.n() != points.len() {
        return Err(Error::MalformedPartition(format!("partition of {} ids for {} points", part.n(), points.len())));
    }
    for (k, (s, e)) in part.subsets().iter().zip(part.enclosures()).enumerate() {
        for &i in s {
            let p = &points[i];
            let inside = match e {
                Enclosure::Singleton => true,
                Enclosure::Box(b) => b.dim() == 2 && b.contains(&[p.x, p.y]),
                Enclosure::Simplex(t) => t.contains2(p),
            };
            if !inside {
                return Err(malformed(k, i));
            }
        }
    }
    let corners = |e: &Enclosure| -> Vec<Point2> {
        match e {
            Enclosure::Singleton => Vec::new(),
            Enclosure::Box(b) => box_points2(b),
            Enclosure::Simplex(SimplexD::Triangle(v)) => v.to_vec(),
            Enclosure::Simplex(SimplexD::Tetrahedron(_)) => Vec::new(),
        }
    };
    match part.problem() {
        Problem::Maxima2d => {
            let st = Staircase::new(points);
            Ok(part.enclosures().iter().all(|e| {
                let c = corners(e);
                if c.is_empty() {
                    return true;
                }
                let top = Point2 {
                    x: c.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max),
                    y: c.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max),
                };
                st.covers(&top)
            }))
        }
        Problem::Upperhull2d => {
            let uh = UnderHull2::new(points);
            Ok(part.enclosures().iter().all(|e| corners(e).iter().all(|c| uh.covers(c))))
        }
        p => Err(Error::InvalidSpec(format!("{p:?} partitions are not 2-d point partitions"))),
    }
}

/// 3-d counterpart for upper-hull partitions with box or tetrahedron enclosures.
pub fn is_respectful3(part: &RespectfulPartition, points: &[Point3]) -> Result<bool> {
    if part.problem() != Problem::Upperhull3d {
        return Err(Error::InvalidSpec(format!("{:?} is not a 3-d problem", part.problem())));
    }
    if part.n() != points.len() {
        return Err(Error::MalformedPartition(format!("partition of {} ids for {} points", part.n(), points.len())));
    }
    let mut verts: Vec<Vec<Point3>> = Vec::new();
    for (k, (s, e)) in part.subsets().iter().zip(part.enclosures()).enumerate() {
        for &i in s {
            let p = &points[i];
            let inside = match e {
                Enclosure::Singleton => true,
                Enclosure::Box(b) => b.dim() == 3 && b.contains(&[p.x, p.y, p.z]),
                Enclosure::Simplex(t) => t.contains3(p),
            };
            if !inside {
                return Err(malformed(k, i));
            }
        }
        verts.push(match e {
            Enclosure::Singleton => Vec::new(),
            Enclosure::Box(b) => b.corners().iter().map(|c| Point3 { x: c[0], y: c[1], z: c[2] }).collect(),
            Enclosure::Simplex(SimplexD::Tetrahedron(v)) => v.to_vec(),
            Enclosure::Simplex(SimplexD::Triangle(_)) => return Err(Error::MalformedPartition("triangle in 3-d".into())),
        });
    }
    if verts.iter().all(Vec::is_empty) {
        return Ok(true);
    }
    let hull = crate::hull3d::incremental_upper_hull(points, 0, &mut crate::geom::CostMeter::new())?;
    let uh = UnderHull3::new(points, hull);
    Ok(verts.iter().flatten().all(|v| uh.covers(v)))
}

/// Blocks between consecutive extreme points: for maxima, the points whose x
/// lies in `(q_{i-1}.x, q_i.x]`; for hulls, the points under each hull edge,
/// with the leftmost vertex alone.
pub fn vertical_partition(seq: &PointSequence<Point2>, problem: Problem) -> Result<RespectfulPartition> {
    let pts = seq.points();
    let n = pts.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if !seq.general_position() {
        return Err(Error::Degenerate("vertical partition needs distinct coordinates".into()));
    }
    match problem {
        Problem::Maxima2d => {
            let st = crate::maxima::maxima_oracle(pts, crate::maxima::OracleMethod::Sortscan)?;
            let xs: Vec<f64> = st.maximal.iter().map(|&i| pts[i].x).collect();
            let mut blocks = vec![Vec::new(); xs.len()];
            for (i, p) in pts.iter().enumerate() {
                blocks[xs.partition_point(|&x| x < p.x)].push(i);
            }
            let enclosures = blocks.iter().map(|b| bbox_enclosure(pts, b)).collect::<Result<Vec<_>>>()?;
            RespectfulPartition::new(n, blocks, enclosures, problem)
        }
        Problem::Upperhull2d => {
            let hull = crate::hull2d::monotone_chain(pts);
            let xs: Vec<f64> = hull.iter().map(|&i| pts[i].x).collect();
            let mut blocks = vec![Vec::new(); xs.len()];
            for (i, p) in pts.iter().enumerate() {
                blocks[xs.partition_point(|&x| x < p.x)].push(i);
            }
            let mut enclosures = vec![Enclosure::Singleton];
            for e in 1..blocks.len() {
                enclosures.push(if blocks[e].len() == 1 {
                    Enclosure::Singleton
                } else {
                    Enclosure::Simplex(edge_triangle(pts, pts[hull[e - 1]], pts[hull[e]], &blocks[e])?)
                });
            }
            RespectfulPartition::new(n, blocks, enclosures, problem)
        }
        p => Err(Error::InvalidSpec(format!("vertical partition not defined for {p:?}"))),
    }
}

fn bbox_enclosure(pts: &[Point2], ids: &[usize]) -> Result<Enclosure> {
    if ids.len() == 1 {
        return Ok(Enclosure::Singleton);
    }
    let c: Vec<[f64; 2]> = ids.iter().map(|&i| [pts[i].x, pts[i].y]).collect();
    Ok(Enclosure::Box(BoxD::bounding(c.iter().map(|v| &v[..])).ok_or(Error::EmptyInput)?))
}

/// Triangle on hull edge `ab` with its third vertex deep enough below to
/// contain `ids` (all of which lie under the edge, right of `a`).
fn edge_triangle(pts: &[Point2], a: Point2, b: Point2, ids: &[usize]) -> Result<SimplexD> {
    let ymin = ids.iter().map(|&i| pts[i].y).fold(a.y.min(b.y), f64::min);
    let top = a.y.max(b.y);
    let mut depth = (top - ymin) + (b.x - a.x);
    for _ in 0..1100 {
        let c = Point2 { x: a.x / 2.0 + b.x / 2.0, y: top - depth };
        if let Ok(t) = SimplexD::triangle([a, b, c]) {
            if ids.iter().all(|&i| t.contains2(&pts[i])) {
                return Ok(t);
            }
        }
        depth *= 2.0;
        if !depth.is_finite() {
            break;
        }
    }
    Err(Error::Degenerate("no finite triangle under a hull edge holds its block".into()))
}
