//! Reference 3-d hulls: randomized incremental with a conflict graph, and
//! brute force over triples for small inputs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orient2d, orient3d, CostMeter, Point3};

/// Largest input accepted by the brute-force oracle.
pub const BRUTEFORCE_MAX: usize = 48;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperHull3 {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    /// Facets counter-clockwise seen from above, smallest id first, sorted.
    pub facets: Vec<[usize; 3]>,
    pub meter: CostMeter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hull3Oracle {
    Incremental,
    Bruteforce,
}

struct Facet {
    v: [usize; 3],
    nb: [usize; 3],
    conf: Vec<usize>,
    alive: bool,
}

fn xy(p: &Point3) -> crate::geom::Point2 {
    p.xy()
}

fn collinear3(a: &Point3, b: &Point3, c: &Point3) -> bool {
    use crate::geom::Point2;
    let xz = |p: &Point3| Point2 { x: p.x, y: p.z };
    let yz = |p: &Point3| Point2 { x: p.y, y: p.z };
    orient2d(&xy(a), &xy(b), &xy(c)) == 0 && orient2d(&xz(a), &xz(b), &xz(c)) == 0 && orient2d(&yz(a), &yz(b), &yz(c)) == 0
}

/// Outward-oriented facets (counter-clockwise seen from outside) of the
/// convex hull of `points[ids]`, as global ids.
pub fn full_hull<R: Rng + ?Sized>(points: &[Point3], ids: &[usize], rng: &mut R, meter: &mut CostMeter) -> Result<Vec<[usize; 3]>> {
    let m = ids.len();
    if m < 4 {
        return Err(Error::TooFewPoints { need: 4, got: m });
    }
    let p = |i: usize| &points[ids[i]];
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);

    // Initial tetrahedron from the first affinely independent points in order.
    let c = (2..m)
        .find(|&k| !collinear3(p(order[0]), p(order[1]), p(order[k])))
        .ok_or_else(|| Error::Degenerate("all points collinear".into()))?;
    order.swap(2, c);
    let d = (3..m)
        .find(|&k| meter.orient3d(p(order[0]), p(order[1]), p(order[2]), p(order[k])) != 0)
        .ok_or_else(|| Error::Degenerate("all points coplanar".into()))?;
    order.swap(3, d);

    let mut facets: Vec<Facet> = Vec::new();
    let tet = [order[0], order[1], order[2], order[3]];
    for skip in 0..4 {
        let mut f = [0; 3];
        let mut k = 0;
        for (i, &t) in tet.iter().enumerate() {
            if i != skip {
                f[k] = t;
                k += 1;
            }
        }
        if meter.orient3d(p(f[0]), p(f[1]), p(f[2]), p(tet[skip])) > 0 {
            f.swap(1, 2);
        }
        facets.push(Facet { v: f, nb: [usize::MAX; 3], conf: Vec::new(), alive: true });
    }
    for a in 0..4 {
        for i in 0..3 {
            let (u, v) = (facets[a].v[i], facets[a].v[(i + 1) % 3]);
            for b in 0..4 {
                if (0..3).any(|j| facets[b].v[j] == v && facets[b].v[(j + 1) % 3] == u) {
                    facets[a].nb[i] = b;
                }
            }
        }
    }

    let mut pconf: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut done = vec![false; m];
    for &t in &tet {
        done[t] = true;
    }
    for &q in &order[4..] {
        for (fi, f) in facets.iter_mut().enumerate() {
            if meter.orient3d(p(f.v[0]), p(f.v[1]), p(f.v[2]), p(q)) > 0 {
                f.conf.push(q);
                pconf[q].push(fi);
            }
        }
    }

    let mut vis_mark: Vec<usize> = vec![usize::MAX; 4];
    let mut tested: Vec<usize> = vec![usize::MAX; m];
    let mut start_at: Vec<usize> = vec![usize::MAX; m];
    let mut end_at: Vec<usize> = vec![usize::MAX; m];
    for step in 4..m {
        let pt = order[step];
        done[pt] = true;
        let vis: Vec<usize> = pconf[pt].iter().copied().filter(|&f| facets[f].alive).collect();
        pconf[pt] = Vec::new();
        if vis.is_empty() {
            continue;
        }
        for &f in &vis {
            vis_mark[f] = step;
        }
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &f in &vis {
            for i in 0..3 {
                if vis_mark[facets[f].nb[i]] != step {
                    horizon.push((f, i));
                }
            }
        }
        let mut new_ids = Vec::with_capacity(horizon.len());
        for &(f, i) in &horizon {
            let (u, v) = (facets[f].v[i], facets[f].v[(i + 1) % 3]);
            let g = facets[f].nb[i];
            let nf = facets.len();
            let j = (0..3)
                .find(|&j| facets[g].v[j] == v && facets[g].v[(j + 1) % 3] == u)
                .expect("neighbor shares the horizon edge");
            facets[g].nb[j] = nf;
            let mut conf = Vec::new();
            for src in [f, g] {
                for &q in &facets[src].conf {
                    if done[q] || tested[q] == nf {
                        continue;
                    }
                    tested[q] = nf;
                    if meter.orient3d(p(u), p(v), p(pt), p(q)) > 0 {
                        conf.push(q);
                    }
                }
            }
            for &q in &conf {
                pconf[q].push(nf);
            }
            facets.push(Facet { v: [u, v, pt], nb: [g, usize::MAX, usize::MAX], conf, alive: true });
            vis_mark.push(usize::MAX);
            start_at[u] = nf;
            end_at[v] = nf;
            new_ids.push(nf);
        }
        for &nf in &new_ids {
            let [u, v, _] = facets[nf].v;
            facets[nf].nb[1] = start_at[v];
            facets[nf].nb[2] = end_at[u];
        }
        for &f in &vis {
            facets[f].alive = false;
            facets[f].conf = Vec::new();
        }
    }
    Ok(facets.iter().filter(|f| f.alive).map(|f| f.v.map(|i| ids[i])).collect())
}

/// Rotates a facet so its smallest id comes first, keeping the cyclic order.
fn canonical(f: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&i| f[i]).expect("three entries");
    [f[k], f[(k + 1) % 3], f[(k + 2) % 3]]
}

/// Keeps facets whose outward normal points up and packages them.
pub fn upper_from_faces(points: &[Point3], faces: &[[usize; 3]], meter: CostMeter) -> UpperHull3 {
    let mut facets: Vec<[usize; 3]> = faces
        .iter()
        .filter(|f| orient2d(&points[f[0]].xy(), &points[f[1]].xy(), &points[f[2]].xy()) > 0)
        .map(|&f| canonical(f))
        .collect();
    facets.sort_unstable();
    let mut vertices: Vec<usize> = facets.iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    UpperHull3 { vertices, facets, meter }
}

fn single_facet(points: &[Point3], ids: [usize; 3]) -> Result<UpperHull3> {
    let [a, b, c] = ids;
    let s = orient2d(&points[a].xy(), &points[b].xy(), &points[c].xy());
    if s == 0 {
        return Err(Error::Degenerate("three points with collinear projections".into()));
    }
    let f = if s > 0 { [a, b, c] } else { [a, c, b] };
    Ok(upper_from_faces(points, &[f], CostMeter::new()))
}

/// Randomized incremental upper hull of `points`.
pub fn incremental_upper_hull(points: &[Point3], seed: u64, meter: &mut CostMeter) -> Result<UpperHull3> {
    let ids: Vec<usize> = (0..points.len()).collect();
    upper_hull_of(points, &ids, seed, meter)
}

/// Randomized incremental upper hull of `points[ids]`; ids in the result are global.
pub fn upper_hull_of(points: &[Point3], ids: &[usize], seed: u64, meter: &mut CostMeter) -> Result<UpperHull3> {
    match ids.len() {
        0..=2 => Err(Error::TooFewPoints { need: 3, got: ids.len() }),
        3 => single_facet(points, [ids[0], ids[1], ids[2]]),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let faces = full_hull(points, ids, &mut rng, meter)?;
            Ok(upper_from_faces(points, &faces, CostMeter::new()))
        }
    }
}

/// Every triple, oriented counter-clockwise from above, with all other points
/// strictly below its plane.
pub fn bruteforce_upper_hull(points: &[Point3]) -> Result<UpperHull3> {
    let n = points.len();
    if n > BRUTEFORCE_MAX {
        return Err(Error::TooLarge { n, max: BRUTEFORCE_MAX });
    }
    if n < 3 {
        return Err(Error::TooFewPoints { need: 3, got: n });
    }
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = orient2d(&points[i].xy(), &points[j].xy(), &points[k].xy());
                if s == 0 {
                    continue;
                }
                let f = if s > 0 { [i, j, k] } else { [i, k, j] };
                let below = (0..n)
                    .filter(|&l| l != i && l != j && l != k)
                    .all(|l| orient3d(&points[f[0]], &points[f[1]], &points[f[2]], &points[l]) < 0);
                if below {
                    faces.push(f);
                }
            }
        }
    }
    Ok(upper_from_faces(points, &faces, CostMeter::new()))
}

pub fn hull3d_oracle(points: &[Point3], method: Hull3Oracle, seed: u64) -> Result<UpperHull3> {
    match method {
        Hull3Oracle::Incremental => {
            let mut meter = CostMeter::new();
            let mut h = incremental_upper_hull(points, seed, &mut meter)?;
            h.meter = meter;
            Ok(h)
        }
        Hull3Oracle::Bruteforce => bruteforce_upper_hull(points),
    }
}

/// Every point on or below every facet plane, and the facets form a terrain:
/// each projected edge borders at most two facets, one on each side.
pub fn verify_upper_hull3(points: &[Point3], hull: &UpperHull3) -> bool {
    use std::collections::HashMap;
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
    for f in &hull.facets {
        if orient2d(&points[f[0]].xy(), &points[f[1]].xy(), &points[f[2]].xy()) <= 0 {
            return false;
        }
        if points.iter().any(|q| orient3d(&points[f[0]], &points[f[1]], &points[f[2]], q) > 0) {
            return false;
        }
        for i in 0..3 {
            *edges.entry((f[i], f[(i + 1) % 3])).or_default() += 1;
        }
    }
    edges.values().all(|&c| c == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3 { x, y, z }
    }

    #[test]
    fn three_points_single_facet() {
        let pts = [p(0.0, 0.0, 0.0), p(1.0, 0.1, 0.2), p(0.3, 1.0, 0.1)];
        let h = incremental_upper_hull(&pts, 0, &mut CostMeter::new()).unwrap();
        assert_eq!(h.facets, vec![[0, 1, 2]]);
        assert_eq!(bruteforce_upper_hull(&pts).unwrap().facets, h.facets);
    }

    #[test]
    fn tetrahedron_with_lower_apex() {
        // Three upper points and one below their triangle.
        let pts = [p(0.0, 0.0, 1.0), p(1.0, 0.1, 1.1), p(0.3, 1.0, 0.9), p(0.4, 0.35, -1.0)];
        let h = incremental_upper_hull(&pts, 3, &mut CostMeter::new()).unwrap();
        assert_eq!(h.vertices, vec![0, 1, 2]);
        assert_eq!(h.facets.len(), 1);
        assert_eq!(bruteforce_upper_hull(&pts).unwrap(), h);
        assert!(verify_upper_hull3(&pts, &h));
    }

    #[test]
    fn coplanar_rejected() {
        let pts = [p(0.0, 0.0, 0.0), p(1.0, 0.0, 0.0), p(0.0, 1.0, 0.0), p(0.3, 0.4, 0.0)];
        assert!(incremental_upper_hull(&pts, 0, &mut CostMeter::new()).is_err());
    }
}
