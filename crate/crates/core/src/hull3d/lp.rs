//! Batched "is this point strictly below the upper hull?" queries.
//!
//! The input is split into groups with one convex hull each. A query starts
//! from the triangle of the projected hull above the probe and repeatedly adds
//! the input point lying highest above the current plane (found by hill
//! climbing each group hull) until no point is above it. The plane is then
//! the upper-hull facet over the probe, and one orientation test answers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::oracle::{full_hull, upper_hull_of};
use crate::error::{Error, Result};
use crate::geom::{CostMeter, Point2, Point3};
use crate::par::{self, Execution};

/// Smallest group size.
pub const MIN_GROUP: usize = 64;

struct Group {
    /// Global ids of the group's hull vertices.
    verts: Vec<usize>,
    /// Skeleton adjacency in local vertex indices.
    adj: Vec<Vec<usize>>,
}

pub struct BelowOracle<'a> {
    points: &'a [Point3],
    groups: Vec<Group>,
    /// Projected hull of the input, counter-clockwise, global ids.
    shadow: Vec<usize>,
}

/// Per-query-stream hill-climbing start points, one per group.
pub struct Warm(Vec<usize>);

impl<'a> BelowOracle<'a> {
    /// Preprocesses `points[ids]` in groups of `m` consecutive ids.
    pub fn build(points: &'a [Point3], ids: &[usize], m: usize, seed: u64, exec: Execution, meter: &mut CostMeter) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::EmptyInput);
        }
        let chunks: Vec<&[usize]> = ids.chunks(m.max(1)).collect();
        let built = par::map_range(exec, chunks.len(), |g| {
            let mut gm = CostMeter::new();
            let grp = build_group(points, chunks[g], seed.wrapping_add(g as u64), &mut gm);
            (grp, gm)
        });
        let mut groups = Vec::with_capacity(built.len());
        for (g, gm) in built {
            *meter += gm;
            groups.push(g);
        }
        let cand: Vec<usize> = groups.iter().flat_map(|g| g.verts.iter().copied()).collect();
        let shadow = convex_polygon(points, &cand, meter);
        Ok(BelowOracle { points, groups, shadow })
    }

    pub fn warm(&self) -> Warm {
        Warm(vec![0; self.groups.len()])
    }

    /// True iff `v` is strictly below the upper hull of the preprocessed points.
    pub fn query(&self, v: &Point3, warm: &mut Warm, meter: &mut CostMeter) -> bool {
        let Some(mut plane) = self.shadow_triangle(&v.xy(), meter) else { return false };
        let pts = self.points;
        let mut work: Vec<usize> = plane.to_vec();
        loop {
            let [a, b, c] = plane.map(|i| &pts[i]);
            let mut top: Option<usize> = None;
            for (g, grp) in self.groups.iter().enumerate() {
                let cand = climb(pts, grp, &mut warm.0[g], [a, b, c], meter);
                top = match top {
                    Some(t) if meter.orient3d_cmp(a, b, c, &pts[cand], &pts[t]) <= 0 => Some(t),
                    _ => Some(cand),
                };
            }
            let top = top.expect("at least one group");
            if work.contains(&top) || meter.orient3d(a, b, c, &pts[top]) <= 0 {
                break;
            }
            work.push(top);
            plane = facet_over(pts, &work, &v.xy(), meter);
        }
        let [a, b, c] = plane.map(|i| &pts[i]);
        meter.orient3d(a, b, c, v) < 0
    }

    /// The fan triangle of the projected hull containing `q`, if any.
    fn shadow_triangle(&self, q: &Point2, meter: &mut CostMeter) -> Option<[usize; 3]> {
        let s = &self.shadow;
        let k = s.len();
        if k < 3 {
            return None;
        }
        let p = |i: usize| self.points[s[i]].xy();
        let h0 = p(0);
        if meter.orient2d(&h0, &p(1), q) < 0 || meter.orient2d(&h0, &p(k - 1), q) > 0 {
            return None;
        }
        let (mut lo, mut hi) = (1, k - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if meter.orient2d(&h0, &p(mid), q) >= 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if meter.orient2d(&p(lo), &p(lo + 1), q) < 0 {
            return None;
        }
        Some([s[0], s[lo], s[lo + 1]])
    }
}

fn build_group(points: &[Point3], ids: &[usize], seed: u64, meter: &mut CostMeter) -> Group {
    let complete = |ids: &[usize]| Group {
        verts: ids.to_vec(),
        adj: (0..ids.len()).map(|i| (0..ids.len()).filter(|&j| j != i).collect()).collect(),
    };
    if ids.len() < 4 {
        return complete(ids);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Ok(faces) = full_hull(points, ids, &mut rng, meter) else { return complete(ids) };
    let mut verts: Vec<usize> = faces.iter().flatten().copied().collect();
    verts.sort_unstable();
    verts.dedup();
    let local = |g: usize| verts.binary_search(&g).expect("face vertex is a hull vertex");
    let mut adj = vec![Vec::new(); verts.len()];
    for f in &faces {
        for i in 0..3 {
            // Each directed edge appears in exactly one face.
            adj[local(f[i])].push(local(f[(i + 1) % 3]));
        }
    }
    Group { verts, adj }
}

/// Hill climbs the group skeleton for the vertex highest above plane `abc`.
fn climb(pts: &[Point3], grp: &Group, start: &mut usize, [a, b, c]: [&Point3; 3], meter: &mut CostMeter) -> usize {
    let mut u = (*start).min(grp.verts.len() - 1);
    'outer: loop {
        for &w in &grp.adj[u] {
            if meter.orient3d_cmp(a, b, c, &pts[grp.verts[w]], &pts[grp.verts[u]]) > 0 {
                u = w;
                continue 'outer;
            }
        }
        break;
    }
    *start = u;
    grp.verts[u]
}

/// Upper-hull facet of `work` whose projection contains `q`.
fn facet_over(pts: &[Point3], work: &[usize], q: &Point2, meter: &mut CostMeter) -> [usize; 3] {
    let h = upper_hull_of(pts, work, work.len() as u64, meter).expect("working set spans a tetrahedron");
    *h.facets
        .iter()
        .find(|f| (0..3).all(|i| meter.orient2d(&pts[f[i]].xy(), &pts[f[(i + 1) % 3]].xy(), q) >= 0))
        .expect("working set projection covers the probe")
}

/// Convex hull (counter-clockwise, global ids) of the projections of `points[ids]`.
fn convex_polygon(points: &[Point3], ids: &[usize], meter: &mut CostMeter) -> Vec<usize> {
    let mut ids = ids.to_vec();
    ids.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(points[a].y.total_cmp(&points[b].y)));
    ids.dedup();
    if ids.len() < 3 {
        return ids;
    }
    let mut chain = |iter: &mut dyn Iterator<Item = usize>| {
        let mut h: Vec<usize> = Vec::new();
        for p in iter {
            while h.len() >= 2
                && meter.orient2d(&points[h[h.len() - 2]].xy(), &points[h[h.len() - 1]].xy(), &points[p].xy()) <= 0
            {
                h.pop();
            }
            h.push(p);
        }
        h
    };
    let mut lower = chain(&mut ids.iter().copied());
    let mut upper = chain(&mut ids.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// For each probe, whether it lies strictly below the upper hull of `q`.
/// Groups have size `max(|probes|, 64)`.
pub fn below_upper_hull_batch(q: &[Point3], probes: &[Point3], seed: u64, meter: &mut CostMeter) -> Result<Vec<bool>> {
    let ids: Vec<usize> = (0..q.len()).collect();
    let oracle = BelowOracle::build(q, &ids, probes.len().max(MIN_GROUP), seed, Execution::Sequential, meter)?;
    let mut warm = oracle.warm();
    Ok(probes.iter().map(|v| oracle.query(v, &mut warm, meter)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3 { x, y, z }
    }

    #[test]
    fn unit_tetrahedron() {
        let q = [p(0.0, 0.0, 0.0), p(1.0, 0.0, 0.0), p(0.0, 1.0, 0.0), p(0.0, 0.0, 1.0)];
        let probes = [p(0.2, 0.2, 0.1), q[3], q[1], p(0.2, 0.2, 0.7), p(2.0, 2.0, -5.0), p(0.2, 0.2, -3.0)];
        let got = below_upper_hull_batch(&q, &probes, 0, &mut CostMeter::new()).unwrap();
        assert_eq!(got, vec![true, false, false, false, false, true]);
    }

    #[test]
    fn empty_rejected() {
        assert!(below_upper_hull_batch(&[], &[p(0.0, 0.0, 0.0)], 0, &mut CostMeter::new()).is_err());
    }
}
