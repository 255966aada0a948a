use std::f64::consts::FRAC_PI_2;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::family::{Family, InstanceSpec};
use super::types::{HSeg, Instance, RangeInstance, Rect, SegmentSet, VSeg};
use super::validate::{no_four_coplanar, no_three_collinear, EXHAUSTIVE_2D, EXHAUSTIVE_3D};
use crate::entropy::{Enclosure, Problem, RespectfulPartition};
use crate::error::{Error, Result};
use crate::geom::{BoxD, CostMeter, Point2, Point3, PointSequence, SimplexD};

const MAX_ATTEMPTS: u64 = 16;

/// A generated instance with the partition its construction guarantees, if any.
#[derive(Clone, Debug)]
pub struct Generated {
    pub spec: InstanceSpec,
    pub instance: Instance,
    pub known_partition: Option<RespectfulPartition>,
}

/// Deterministic in `spec`. Output is certified nondegenerate; a failed
/// certification is retried with a derived seed a bounded number of times.
pub fn generate(spec: &InstanceSpec) -> Result<Generated> {
    let spec = InstanceSpec::new(spec.family, spec.n, spec.seed)?;
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let seed = spec.seed ^ attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match attempt_once(&spec, &mut rng).and_then(|g| certify(&g, seed).map(|_| g)) {
            Ok(g) => return Ok(g),
            Err(e) => last = Some(e),
        }
    }
    Err(Error::Degenerate(format!(
        "{} n={} seed={}: certification failed after {MAX_ATTEMPTS} attempts ({})",
        spec.family,
        spec.n,
        spec.seed,
        last.map(|e| e.to_string()).unwrap_or_default()
    )))
}

fn certify(g: &Generated, seed: u64) -> Result<()> {
    match &g.instance {
        Instance::Points2(s) => {
            if !s.general_position() {
                return Err(Error::Degenerate("repeated coordinate".into()));
            }
            if s.len() <= EXHAUSTIVE_2D && !no_three_collinear(s.points()) {
                return Err(Error::Degenerate("three collinear points".into()));
            }
            match g.spec.family {
                Family::MaximaHard => {
                    let m = crate::maxima::maxima_oracle(s.points(), crate::maxima::OracleMethod::Sortscan)?;
                    if m.maximal.len() != s.len() {
                        return Err(Error::Degenerate("staircase lost a maximal point".into()));
                    }
                }
                Family::Hull2dHard if s.len() >= 2 => {
                    let h = crate::hull2d::monotone_chain(s.points());
                    if h.len() != s.len() {
                        return Err(Error::Degenerate("parabola lost a hull vertex".into()));
                    }
                }
                _ => {}
            }
        }
        Instance::Points3(s) => {
            if !s.general_position() {
                return Err(Error::Degenerate("repeated coordinate".into()));
            }
            if s.len() <= EXHAUSTIVE_3D && !no_four_coplanar(s.points()) {
                return Err(Error::Degenerate("four coplanar points".into()));
            }
            if g.spec.family == Family::Hull3dHard && s.len() >= 3 {
                let h = crate::hull3d::incremental_upper_hull(s.points(), seed, &mut CostMeter::new())?;
                if h.vertices.len() != s.len() {
                    return Err(Error::Degenerate("paraboloid lost a hull vertex".into()));
                }
            }
        }
        Instance::Segments(s) => s.validate()?,
        Instance::Ranges(r) => r.validate()?,
    }
    Ok(())
}

fn attempt_once(spec: &InstanceSpec, rng: &mut ChaCha8Rng) -> Result<Generated> {
    let n = spec.n;
    let (instance, known) = match spec.family {
        Family::MaximaEasy { h } => {
            let mut pts: Vec<Point2> = (0..h)
                .map(|i| {
                    let t = (i as f64 + 0.5 + rng.random_range(-0.3..0.3)) / h as f64;
                    let th = FRAC_PI_2 * (0.05 + 0.9 * t);
                    Point2 { x: 0.5 + 0.5 * th.cos(), y: 0.5 + 0.5 * th.sin() }
                })
                .collect();
            pts.extend((h..n).map(|_| Point2 { x: rng.random_range(0.0..0.5), y: rng.random_range(0.0..0.5) }));
            let blocks = singles_plus_block(h, n, || bbox2(&pts[h..]))?;
            shuffled2(pts, blocks, Problem::Maxima2d, rng)?
        }
        Family::MaximaHard => {
            let pts = jittered(n, rng)
                .into_iter()
                .map(|t| {
                    let th = 0.1 + (FRAC_PI_2 - 0.2) * t;
                    Point2 { x: th.cos(), y: th.sin() }
                })
                .collect();
            shuffled2(pts, vec![], Problem::Maxima2d, rng)?
        }
        Family::Hull2dEasy => {
            let v = [Point2 { x: -1.0, y: 0.0 }, Point2 { x: 0.1, y: 1.0 }, Point2 { x: 1.0, y: -0.05 }];
            let inner = shrink2(&v, 0.5);
            let mut pts = v.to_vec();
            pts.extend((3..n).map(|_| in_triangle(&inner, rng)));
            let blocks = singles_plus_block(3, n, || SimplexD::triangle(inner).map(Enclosure::Simplex))?;
            shuffled2(pts, blocks, Problem::Upperhull2d, rng)?
        }
        Family::Hull2dHard => {
            let pts = jittered(n, rng)
                .into_iter()
                .map(|x| Point2 { x, y: -(x * x) })
                .collect();
            shuffled2(pts, vec![], Problem::Upperhull2d, rng)?
        }
        Family::Hull3dEasy => {
            let v = [
                Point3 { x: 0.0, y: 0.05, z: 0.0 },
                Point3 { x: 1.0, y: 0.0, z: 0.02 },
                Point3 { x: 0.45, y: 1.0, z: 0.01 },
                Point3 { x: 0.5, y: 0.4, z: 1.0 },
            ];
            let inner = shrink3(&v, 0.5);
            let mut pts = v.to_vec();
            pts.extend((4..n).map(|_| in_tetrahedron(&inner, rng)));
            let blocks = singles_plus_block(4, n, || SimplexD::tetrahedron(inner).map(Enclosure::Simplex))?;
            shuffled3(pts, blocks, rng)?
        }
        Family::Hull3dHard => {
            let pts = (0..n)
                .map(|_| {
                    let (x, y) = in_disk(rng);
                    Point3 { x, y, z: -(x * x + y * y) }
                })
                .collect();
            shuffled3(pts, vec![], rng)?
        }
        Family::Clustered { k } => {
            let centers: Vec<(f64, f64)> = (0..k).map(|_| (rng.random(), rng.random())).collect();
            let normal = Normal::new(0.0, 0.02).expect("valid sigma");
            let pts = (0..n)
                .map(|_| {
                    let c = centers[rng.random_range(0..k)];
                    Point2 { x: c.0 + normal.sample(rng), y: c.1 + normal.sample(rng) }
                })
                .collect();
            (Instance::Points2(PointSequence::new(pts)?), None)
        }
        Family::UniformDisk => {
            let pts = (0..n)
                .map(|_| {
                    let (x, y) = in_disk(rng);
                    Point2 { x, y }
                })
                .collect();
            (Instance::Points2(PointSequence::new(pts)?), None)
        }
        Family::UniformSquare => {
            let pts = (0..n).map(|_| Point2 { x: rng.random(), y: rng.random() }).collect();
            (Instance::Points2(PointSequence::new(pts)?), None)
        }
        Family::UniformBall => {
            let pts = (0..n)
                .map(|_| loop {
                    let p: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
                    if p.iter().map(|c| c * c).sum::<f64>() < 1.0 {
                        break Point3 { x: p[0], y: p[1], z: p[2] };
                    }
                })
                .collect();
            (Instance::Points3(PointSequence::new(pts)?), None)
        }
        Family::SegintCrossingGrid => {
            let h = n.div_ceil(2);
            let horizontal = (0..h)
                .map(|_| HSeg {
                    x0: -rng.random_range(0.1..0.5),
                    x1: 1.0 + rng.random_range(0.1..0.5),
                    y: rng.random_range(0.1..0.9),
                })
                .collect();
            let vertical = (h..n)
                .map(|_| VSeg {
                    x: rng.random_range(0.1..0.9),
                    y0: -rng.random_range(0.1..0.5),
                    y1: 1.0 + rng.random_range(0.1..0.5),
                })
                .collect();
            (Instance::Segments(SegmentSet { horizontal, vertical }), None)
        }
        Family::SegintSeparated => {
            let h = n.div_ceil(2);
            let pair = |rng: &mut ChaCha8Rng, lo: f64| {
                let (a, b): (f64, f64) = (rng.random(), rng.random());
                (lo + a.min(b), lo + a.max(b))
            };
            let horizontal = (0..h)
                .map(|_| {
                    let (x0, x1) = pair(rng, 0.0);
                    HSeg { x0, x1, y: rng.random() }
                })
                .collect();
            let vertical = (h..n)
                .map(|_| {
                    let (y0, y1) = pair(rng, 0.0);
                    VSeg { x: 2.0 + rng.random::<f64>(), y0, y1 }
                })
                .collect();
            (Instance::Segments(SegmentSet { horizontal, vertical }), None)
        }
        Family::RangerepRandom => {
            let m = n.div_ceil(2);
            let side = 2.0 / (n as f64).sqrt();
            let points = (0..m).map(|_| Point2 { x: rng.random(), y: rng.random() }).collect();
            let rects = (m..n)
                .map(|_| {
                    let (cx, cy): (f64, f64) = (rng.random(), rng.random());
                    let (wx, wy) = (rng.random_range(0.01..1.0) * side, rng.random_range(0.01..1.0) * side);
                    Rect { xlo: cx - wx / 2.0, xhi: cx + wx / 2.0, ylo: cy - wy / 2.0, yhi: cy + wy / 2.0 }
                })
                .collect();
            (Instance::Ranges(RangeInstance { points, rects }), None)
        }
    };
    Ok(Generated { spec: *spec, instance, known_partition: known })
}

type Blocks = Vec<(Vec<usize>, Enclosure)>;

/// Ids `0..k` as singletons and `k..n` as one block enclosed by `enc`.
fn singles_plus_block(k: usize, n: usize, enc: impl FnOnce() -> Result<Enclosure>) -> Result<Blocks> {
    let mut b: Blocks = (0..k).map(|i| (vec![i], Enclosure::Singleton)).collect();
    match n - k {
        0 => {}
        1 => b.push((vec![k], Enclosure::Singleton)),
        _ => b.push(((k..n).collect(), enc()?)),
    }
    Ok(b)
}

fn bbox2(p: &[Point2]) -> Result<Enclosure> {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for q in p {
        lo = [lo[0].min(q.x), lo[1].min(q.y)];
        hi = [hi[0].max(q.x), hi[1].max(q.y)];
    }
    Ok(Enclosure::Box(BoxD::new(lo.to_vec(), hi.to_vec())?))
}

/// Shuffles points and renames the block ids to match.
fn shuffled2(
    pts: Vec<Point2>,
    blocks: Blocks,
    problem: Problem,
    rng: &mut ChaCha8Rng,
) -> Result<(Instance, Option<RespectfulPartition>)> {
    let n = pts.len();
    let (perm, inv) = permutation(n, rng);
    let out: Vec<Point2> = perm.iter().map(|&i| pts[i]).collect();
    let known = if blocks.is_empty() {
        RespectfulPartition::singletons(n, problem)
    } else {
        renamed(n, blocks, &inv, problem)?
    };
    Ok((Instance::Points2(PointSequence::new(out)?), Some(known)))
}

fn shuffled3(pts: Vec<Point3>, blocks: Blocks, rng: &mut ChaCha8Rng) -> Result<(Instance, Option<RespectfulPartition>)> {
    let n = pts.len();
    let (perm, inv) = permutation(n, rng);
    let out: Vec<Point3> = perm.iter().map(|&i| pts[i]).collect();
    let known = if blocks.is_empty() {
        RespectfulPartition::singletons(n, Problem::Upperhull3d)
    } else {
        renamed(n, blocks, &inv, Problem::Upperhull3d)?
    };
    Ok((Instance::Points3(PointSequence::new(out)?), Some(known)))
}

fn renamed(n: usize, blocks: Blocks, inv: &[usize], problem: Problem) -> Result<RespectfulPartition> {
    let (subsets, enclosures): (Vec<_>, Vec<_>) = blocks
        .into_iter()
        .map(|(ids, e)| (ids.into_iter().map(|i| inv[i]).collect::<Vec<_>>(), e))
        .unzip();
    RespectfulPartition::new(n, subsets, enclosures, problem)
}

/// `perm[new] = old` and its inverse.
fn permutation(n: usize, rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut inv = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    (perm, inv)
}

/// Sorted values in (0, 1), one per cell of a uniform grid, jittered inside the cell.
fn jittered(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n)
        .map(|i| (i as f64 + 0.5 + rng.random_range(-0.25..0.25)) / n as f64)
        .collect()
}

fn in_disk(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let (x, y) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if x * x + y * y < 1.0 {
            return (x, y);
        }
    }
}

fn barycentric<const K: usize>(rng: &mut ChaCha8Rng) -> [f64; K] {
    let mut w = [0.0; K];
    for v in &mut w {
        *v = -(1.0 - rng.random::<f64>()).ln();
    }
    let s: f64 = w.iter().sum();
    w.map(|v| v / s)
}

fn in_triangle(v: &[Point2; 3], rng: &mut ChaCha8Rng) -> Point2 {
    let w = barycentric::<3>(rng);
    Point2 {
        x: w[0] * v[0].x + w[1] * v[1].x + w[2] * v[2].x,
        y: w[0] * v[0].y + w[1] * v[1].y + w[2] * v[2].y,
    }
}

fn in_tetrahedron(v: &[Point3; 4], rng: &mut ChaCha8Rng) -> Point3 {
    let w = barycentric::<4>(rng);
    let c = |f: fn(&Point3) -> f64| (0..4).map(|i| w[i] * f(&v[i])).sum::<f64>();
    Point3 { x: c(|p| p.x), y: c(|p| p.y), z: c(|p| p.z) }
}

fn shrink2(v: &[Point2; 3], t: f64) -> [Point2; 3] {
    let (gx, gy) = ((v[0].x + v[1].x + v[2].x) / 3.0, (v[0].y + v[1].y + v[2].y) / 3.0);
    v.map(|p| Point2 { x: gx + t * (p.x - gx), y: gy + t * (p.y - gy) })
}

fn shrink3(v: &[Point3; 4], t: f64) -> [Point3; 4] {
    let g = |f: fn(&Point3) -> f64| v.iter().map(f).sum::<f64>() / 4.0;
    let (gx, gy, gz) = (g(|p| p.x), g(|p| p.y), g(|p| p.z));
    v.map(|p| Point3 { x: gx + t * (p.x - gx), y: gy + t * (p.y - gy), z: gz + t * (p.z - gz) })
}
