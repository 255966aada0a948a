//! Every acceptance criterion as a named, self-checking run.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{fit_scaling, geometric_ladder, run_experiment, shuffle_instance, Algorithm, ExperimentConfig, Row, Thresholds};
use crate::adversary::{adversary_run, MaximaProcedure, DEFAULT_C_AMORT};
use crate::entropy::{
    entropy_report, f_measure, is_respectful2, kd_respectful_partition, partition_entropy, structural_entropy_bruteforce,
    vertical_partition, Enclosure, Problem, RespectfulPartition,
};
use crate::error::{Error, Result};
use crate::geom::{orient2d, orient3d, BoxD, Point2, Point3, PointSequence};
use crate::hull2d::{hull2d, hull2d_oracle, HullOracle};
use crate::hull3d::{bruteforce_upper_hull, hull3d, Hull3Config};
use crate::instances::{generate, Family, InstanceSpec};
use crate::maxima::{maxima2d, maxima_oracle, OracleMethod};
use crate::par::Execution;
use crate::reporting::{count_adaptive, encode_relation, report_adaptive, CountMode, ReportConfig};

pub const PRESETS: [&str; 10] = [
    "c1-entropy-fixture",
    "c2-f-fixture",
    "c3-oracles",
    "c4-bands",
    "c5-entropy-bound",
    "c6-adversary",
    "c7-measures",
    "c8-disk",
    "c9-random-order",
    "c10-predicates",
];

#[derive(Clone, Debug, Serialize)]
pub struct PresetOutcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    /// One line per individual check, failures first.
    pub details: Vec<String>,
    /// Experiment rows behind the verdict, if any.
    #[serde(skip)]
    pub rows: Vec<Row>,
}

/// Accepts a preset name or its number `1..=10`.
pub fn preset_id(name: &str) -> Result<usize> {
    if let Ok(i) = name.parse::<usize>() {
        if (1..=PRESETS.len()).contains(&i) {
            return Ok(i);
        }
    }
    PRESETS
        .iter()
        .position(|&p| p == name || p.split('-').next() == Some(name))
        .map(|i| i + 1)
        .ok_or_else(|| Error::Experiment(format!("unknown preset `{name}`; known: {}", PRESETS.join(", "))))
}

pub fn run_preset(name: &str, exec: Execution) -> Result<PresetOutcome> {
    let id = preset_id(name)?;
    let mut checks = Checks::default();
    match id {
        1 => entropy_fixture(&mut checks)?,
        2 => f_fixture(&mut checks),
        3 => oracles(&mut checks)?,
        4 => bands(&mut checks, exec)?,
        5 => entropy_bound(&mut checks, exec)?,
        6 => adversary(&mut checks)?,
        7 => measures(&mut checks, exec)?,
        8 => disk(&mut checks, exec)?,
        9 => random_order(&mut checks)?,
        _ => predicates(&mut checks),
    }
    let mut details = checks.lines;
    details.sort_by_key(|l| !l.starts_with("FAIL"));
    Ok(PresetOutcome { id, name: PRESETS[id - 1], pass: checks.failures == 0, details, rows: checks.rows })
}

#[derive(Default)]
struct Checks {
    lines: Vec<String>,
    failures: usize,
    rows: Vec<Row>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: String) {
        if !ok {
            self.failures += 1;
        }
        self.lines.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
    }
}

/// Twelve points: three maximal (`q1..q3`) and nine dominated. Boxes
/// under `q2` and `q3` hold six and three of them; the three vertical
/// blocks hold four points each.
pub fn staircase_fixture() -> Vec<Point2> {
    [
        (4.0, 12.0),
        (8.0, 8.0),
        (12.0, 4.0),
        (1.0, 1.0),
        (2.0, 2.0),
        (3.0, 3.0),
        (5.0, 5.0),
        (6.0, 6.0),
        (7.0, 7.0),
        (9.0, 0.5),
        (10.0, 1.5),
        (11.0, 2.5),
    ]
    .into_iter()
    .map(|(x, y)| Point2 { x, y })
    .collect()
}

/// The `{1, 7, 4}` partition of [`staircase_fixture`].
pub fn fixture_partition() -> Result<RespectfulPartition> {
    let pts = staircase_fixture();
    let blocks = vec![vec![0], vec![1, 3, 4, 5, 6, 7, 8], vec![2, 9, 10, 11]];
    let encl = blocks
        .iter()
        .map(|b: &Vec<usize>| {
            if b.len() == 1 {
                Ok(Enclosure::Singleton)
            } else {
                let c: Vec<[f64; 2]> = b.iter().map(|&i| [pts[i].x, pts[i].y]).collect();
                Ok(Enclosure::Box(BoxD::bounding(c.iter().map(|v| &v[..])).ok_or(Error::EmptyInput)?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    RespectfulPartition::new(12, blocks, encl, Problem::Maxima2d)
}

fn entropy_fixture(c: &mut Checks) -> Result<()> {
    let pts = staircase_fixture();
    let part = fixture_partition()?;
    c.check(is_respectful2(&part, &pts)?, "{1,7,4} partition is respectful".into());
    let h = partition_entropy(&part.sizes());
    c.check((h - 1.281).abs() <= 1e-3, format!("H{{1,7,4}} = {h:.4} (want 1.281)"));
    let vert = vertical_partition(&PointSequence::new(pts)?, Problem::Maxima2d)?;
    let hv = vert.entropy();
    c.check((hv - 3f64.log2()).abs() <= 1e-3, format!("H(vert) = {hv:.4} sizes {:?} (want log2 3)", vert.sizes()));
    Ok(())
}

fn f_fixture(c: &mut Checks) {
    let f = f_measure(&staircase_fixture());
    let want = 5.0 * (12.0f64 / 7.0).log2() + 4.0 * 3f64.log2();
    c.check((f - 10.228).abs() <= 1e-3 && (f - want).abs() <= 1e-9, format!("F(S) = {f:.4} bits (want 10.228)"));
}

const CASES: usize = 500;

fn random_spec(rng: &mut ChaCha8Rng, fams: &[Family], max_n: usize) -> Result<InstanceSpec> {
    let fam = fams[rng.random_range(0..fams.len())];
    let n = rng.random_range(fam.min_n().max(3)..=max_n);
    InstanceSpec::new(fam, n, rng.random())
}

fn oracles(c: &mut Checks) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let fam2 = [
        Family::MaximaEasy { h: 4 },
        Family::MaximaHard,
        Family::Hull2dEasy,
        Family::Hull2dHard,
        Family::Clustered { k: 3 },
        Family::UniformDisk,
        Family::UniformSquare,
    ];
    let (mut bad_max, mut bad_h2) = (0, 0);
    for _ in 0..CASES {
        let g = generate(&random_spec(&mut rng, &fam2, 64)?)?;
        let seq = g.instance.points2().expect("2-d family");
        let seed = rng.random();
        if maxima2d(seq, seed)?.maximal != maxima_oracle(seq.points(), OracleMethod::Bruteforce)?.maximal {
            bad_max += 1;
        }
        if hull2d(seq, seed)?.vertices != hull2d_oracle(seq.points(), HullOracle::Bruteforce).vertices {
            bad_h2 += 1;
        }
    }
    c.check(bad_max == 0, format!("maxima2d vs brute force: {bad_max}/{CASES} mismatches"));
    c.check(bad_h2 == 0, format!("hull2d vs brute force: {bad_h2}/{CASES} mismatches"));
    let fam3 = [Family::Hull3dEasy, Family::Hull3dHard, Family::UniformBall];
    let mut bad_h3 = 0;
    for _ in 0..CASES {
        let g = generate(&random_spec(&mut rng, &fam3, 48)?)?;
        let seq = g.instance.points3().expect("3-d family");
        let cfg = Hull3Config { seed: rng.random(), delta: 1.0, cap: 1.0, ..Default::default() };
        let got = hull3d(seq, &cfg)?.hull;
        let want = bruteforce_upper_hull(seq.points())?;
        if got.vertices != want.vertices || got.facets != want.facets {
            bad_h3 += 1;
        }
    }
    c.check(bad_h3 == 0, format!("hull3d vs brute force: {bad_h3}/{CASES} mismatches"));
    let famr = [Family::SegintCrossingGrid, Family::SegintSeparated, Family::RangerepRandom];
    let (mut bad_rep, mut bad_cnt) = (0, 0);
    for _ in 0..CASES {
        let g = generate(&random_spec(&mut rng, &famr, 64)?)?;
        let inst = encode_relation(&g.instance)?;
        let mut want = Vec::new();
        let (mut rc, mut bc) = (vec![0u64; inst.red.len()], vec![0u64; inst.blue.len()]);
        for i in 0..inst.red.len() {
            for j in 0..inst.blue.len() {
                if inst.interacts(i, j) {
                    want.push((i, j));
                    rc[i] += 1;
                    bc[j] += 1;
                }
            }
        }
        let cfg = ReportConfig { seed: rng.random(), ..Default::default() };
        if report_adaptive(&inst, &cfg)?.0.pairs != want {
            bad_rep += 1;
        }
        let total = count_adaptive(&inst, CountMode::Total, &cfg)?.total;
        let ind = count_adaptive(&inst, CountMode::Individual, &cfg)?;
        if total != want.len() as u64 || ind.red.as_ref() != Some(&rc) || ind.blue.as_ref() != Some(&bc) {
            bad_cnt += 1;
        }
    }
    c.check(bad_rep == 0, format!("report_adaptive vs all-pairs scan: {bad_rep}/{CASES} mismatches"));
    c.check(bad_cnt == 0, format!("count_adaptive vs all-pairs scan: {bad_cnt}/{CASES} mismatches"));
    Ok(())
}

fn ladder(family: Family, alg: Algorithm, lo: u32, hi: u32, seeds: u64, exec: Execution) -> ExperimentConfig {
    ExperimentConfig {
        family,
        sizes: geometric_ladder(lo, hi),
        seeds,
        base_seed: 0,
        algorithms: vec![alg],
        perms: 1,
        output: None,
        wall: false,
        entropy: false,
        delta: None,
        cap: None,
        exec,
    }
}

/// The easy (cost/n) and hard (cost/(n log n)) ladders of criterion 4.
pub fn band_ladders(exec: Execution) -> Vec<(ExperimentConfig, Thresholds)> {
    let lin = |b| Thresholds { band_n: Some(b), ..Default::default() };
    let log = Thresholds { band_nlogn: Some(3.0), ..Default::default() };
    vec![
        (ladder(Family::MaximaEasy { h: 1 }, Algorithm::Maxima2d, 12, 17, 10, exec), lin(2.0)),
        (ladder(Family::Hull2dEasy, Algorithm::Hull2d, 12, 17, 10, exec), lin(2.0)),
        (ladder(Family::Hull3dEasy, Algorithm::Hull3d, 12, 17, 10, exec), lin(2.5)),
        (ladder(Family::SegintSeparated, Algorithm::Report, 12, 17, 10, exec), lin(2.0)),
        (ladder(Family::MaximaHard, Algorithm::Maxima2d, 12, 17, 10, exec), log),
        (ladder(Family::Hull2dHard, Algorithm::Hull2d, 12, 17, 10, exec), log),
        (ladder(Family::Hull3dHard, Algorithm::Hull3d, 12, 17, 10, exec), log),
    ]
}

fn run_bands(c: &mut Checks, list: Vec<(ExperimentConfig, Thresholds)>) -> Result<()> {
    for (cfg, t) in list {
        let rows = run_experiment(&cfg)?;
        for b in fit_scaling(&rows)?.check(&t) {
            c.check(b.pass, format!("{} {}: {} = {:.3} (max {})", b.family, b.algorithm, b.metric, b.value, b.threshold));
        }
        c.rows.extend(rows);
    }
    Ok(())
}

fn bands(c: &mut Checks, exec: Execution) -> Result<()> {
    run_bands(c, band_ladders(exec))
}

/// 2-d instances used by the corpus-wide bounds: the criterion-4 point
/// ladders at a smaller top size plus mixed families.
pub fn corpus_specs() -> Vec<InstanceSpec> {
    let mut out = Vec::new();
    let fams = [
        Family::MaximaEasy { h: 1 },
        Family::MaximaEasy { h: 16 },
        Family::MaximaHard,
        Family::Hull2dEasy,
        Family::Hull2dHard,
        Family::Clustered { k: 8 },
        Family::UniformDisk,
        Family::UniformSquare,
    ];
    for fam in fams {
        for n in geometric_ladder(6, 14) {
            for seed in 0..3 {
                out.push(InstanceSpec { family: fam, n, seed });
            }
        }
    }
    out
}

fn entropy_bound(c: &mut Checks, exec: Execution) -> Result<()> {
    let specs = corpus_specs();
    let results = crate::par::map(exec, &specs, |spec| -> Result<(f64, f64)> {
        let g = generate(spec)?;
        let seq = g.instance.points2().expect("2-d corpus");
        let n = seq.len() as f64;
        let kd = kd_respectful_partition(seq, Problem::Maxima2d)?.entropy();
        let m = maxima2d(seq, spec.seed)?.meter.comparisons as f64 / (n * (kd + 1.0));
        let known = match &g.known_partition {
            Some(p) if p.problem() == Problem::Upperhull2d => p.entropy(),
            _ => entropy_report(seq, Problem::Upperhull2d, None)?.h_partition,
        };
        let h = hull2d(seq, spec.seed)?.meter.total_tests() as f64 / (n * (known + 1.0));
        Ok((m, h))
    });
    let (mut worst_m, mut worst_h) = (0.0f64, 0.0f64);
    for r in results {
        let (m, h) = r?;
        worst_m = worst_m.max(m);
        worst_h = worst_h.max(h);
    }
    c.check(worst_m <= 12.0, format!("maxima2d comparisons / (n (h_kd+1)) max {worst_m:.3} over {} instances (max 12)", specs.len()));
    c.check(worst_h <= 16.0, format!("hull2d cost / (n (H_known+1)) max {worst_h:.3} over {} instances (max 16)", specs.len()));
    Ok(())
}

fn adversary(c: &mut Checks) -> Result<()> {
    for k in 8..=14u32 {
        let n = 1usize << k;
        let g = generate(&InstanceSpec::new(Family::MaximaHard, n, k as u64)?)?;
        let seq = g.instance.points2().expect("2-d family");
        for proc in [MaximaProcedure::Maxima2d { seed: k as u64 }, MaximaProcedure::Sortscan] {
            let r = adversary_run(seq, proc, DEFAULT_C_AMORT)?;
            let ok = r.t as f64 >= (n as u64 * k as u64) as f64 / 16.0
                && r.replay_ok
                && r.exceptional <= r.ordinary
                && r.t as f64 >= r.d as f64 / 8.0;
            c.check(
                ok,
                format!(
                    "{proc:?} n=2^{k}: T={} nk/16={} D={} ordinary={} exceptional={} replay={}",
                    r.t,
                    n * k as usize / 16,
                    r.d,
                    r.ordinary,
                    r.exceptional,
                    r.replay_ok
                ),
            );
        }
    }
    Ok(())
}

fn measures(c: &mut Checks, exec: Execution) -> Result<()> {
    let specs: Vec<InstanceSpec> = corpus_specs().into_iter().filter(|s| s.family != Family::Hull2dEasy && s.family != Family::Hull2dHard).collect();
    let results = crate::par::map(exec, &specs, |spec| -> Result<(f64, f64)> {
        let g = generate(spec)?;
        let r = entropy_report(g.instance.points2().expect("2-d corpus"), Problem::Maxima2d, None)?;
        Ok((r.f_per_n() / (r.h_kd + 1.0), r.h_kd / (r.f_per_n() + 1.0)))
    });
    let (mut a, mut b) = (0.0f64, 0.0f64);
    for r in results {
        let (x, y) = r?;
        a = a.max(x);
        b = b.max(y);
    }
    c.check(a <= 8.0, format!("F/n / (h_kd+1) max {a:.3} over {} instances (max 8)", specs.len()));
    c.check(b <= 8.0, format!("h_kd / (F/n+1) max {b:.3} over {} instances (max 8)", specs.len()));
    let mut worst = 0.0f64;
    let mut count = 0;
    let fams = [Family::MaximaEasy { h: 2 }, Family::MaximaHard, Family::Clustered { k: 2 }, Family::UniformSquare, Family::UniformDisk];
    for fam in fams {
        for n in 3..=12 {
            for seed in 0..10 {
                let g = generate(&InstanceSpec::new(fam, n, seed)?)?;
                let seq = g.instance.points2().expect("2-d family");
                let kd = kd_respectful_partition(seq, Problem::Maxima2d)?.entropy();
                let opt = structural_entropy_bruteforce(seq.points(), Problem::Maxima2d)?;
                worst = worst.max(kd / (opt + 1.0));
                count += 1;
            }
        }
    }
    c.check(worst <= 4.0, format!("h_kd / (H_brute+1) max {worst:.3} over {count} instances n <= 12 (max 4)"));
    Ok(())
}

fn disk(c: &mut Checks, exec: Execution) -> Result<()> {
    let cfg = ladder(Family::UniformDisk, Algorithm::Hull2d, 12, 18, 50, exec);
    run_bands(c, vec![(cfg, Thresholds { band_n: Some(2.0), ..Default::default() })])
}

/// Ten fixed instances for the random-order check.
pub fn random_order_instances() -> Vec<InstanceSpec> {
    [
        Family::MaximaEasy { h: 1 },
        Family::MaximaEasy { h: 64 },
        Family::MaximaHard,
        Family::Hull2dEasy,
        Family::Hull2dHard,
        Family::Clustered { k: 8 },
        Family::Clustered { k: 2 },
        Family::UniformDisk,
        Family::UniformSquare,
        Family::MaximaEasy { h: 8 },
    ]
    .into_iter()
    .enumerate()
    .map(|(i, family)| InstanceSpec { family, n: 4096, seed: 100 + i as u64 })
    .collect()
}

fn random_order(c: &mut Checks) -> Result<()> {
    for spec in random_order_instances() {
        let g = generate(&spec)?;
        let (mut m, mut h) = (Vec::new(), Vec::new());
        for perm in 0..100u64 {
            let inst = shuffle_instance(&g.instance, perm)?;
            let seq = inst.points2().expect("2-d family");
            m.push(maxima2d(seq, perm)?.meter.comparisons as f64);
            h.push(hull2d(seq, perm)?.meter.total_tests() as f64);
        }
        for (name, v) in [("maxima2d", m), ("hull2d", h)] {
            let mean = v.iter().sum::<f64>() / v.len() as f64;
            let max = v.iter().copied().fold(0.0, f64::max);
            c.check(max <= 3.0 * mean, format!("{} {name}: max/mean = {:.3} (max 3)", spec.family, max / mean));
        }
    }
    Ok(())
}

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

fn sign(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn det2_sign(a: &Point2, b: &Point2, c: &Point2) -> i8 {
    let (ax, ay) = (rat(b.x) - rat(a.x), rat(b.y) - rat(a.y));
    let (cx, cy) = (rat(c.x) - rat(a.x), rat(c.y) - rat(a.y));
    sign(&(ax * cy - ay * cx))
}

fn det3_sign(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> i8 {
    let row = |p: &Point3| [rat(p.x) - rat(a.x), rat(p.y) - rat(a.y), rat(p.z) - rat(a.z)];
    let (u, v, w) = (row(b), row(c), row(d));
    let m = &u[0] * (&v[1] * &w[2] - &v[2] * &w[1]) - &u[1] * (&v[0] * &w[2] - &v[2] * &w[0]) + &u[2] * (&v[0] * &w[1] - &v[1] * &w[0]);
    sign(&m)
}

/// Random, exactly degenerate and nearly degenerate orientation cases.
/// Returns `(a, b, c)` triples and `(a, b, c, d)` quadruples.
pub fn predicate_cases(count: usize, seed: u64) -> (Vec<[Point2; 3]>, Vec<[Point3; 4]>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nudge = |x: f64, k: i32| {
        let mut v = x;
        for _ in 0..k.unsigned_abs() {
            v = if k > 0 { v.next_up() } else { v.next_down() };
        }
        v
    };
    let mut p2 = Vec::with_capacity(count);
    let mut p3 = Vec::with_capacity(count);
    for i in 0..count {
        let mode = i % 4;
        let rp = |rng: &mut ChaCha8Rng| Point2 { x: rng.random_range(-1.0..1.0), y: rng.random_range(-1.0..1.0) };
        let a = rp(&mut rng);
        let b = rp(&mut rng);
        let c = match mode {
            0 => rp(&mut rng),
            1 => {
                // On the segment up to rounding of the interpolation.
                let t: f64 = rng.random_range(-2.0..3.0);
                Point2 { x: a.x + t * (b.x - a.x), y: a.y + t * (b.y - a.y) }
            }
            2 => {
                let t: f64 = rng.random_range(0.0..1.0);
                let p = Point2 { x: a.x + t * (b.x - a.x), y: a.y + t * (b.y - a.y) };
                Point2 { x: nudge(p.x, rng.random_range(-3..=3)), y: nudge(p.y, rng.random_range(-3..=3)) }
            }
            _ => {
                // Exactly collinear small integers scaled by a power of two.
                let s = (2.0f64).powi(rng.random_range(-40..40));
                let (x0, y0, dx, dy) = (rng.random_range(-50..50) as f64, rng.random_range(-50..50) as f64, rng.random_range(-9..9) as f64, rng.random_range(-9..9) as f64);
                let k = rng.random_range(-5..5) as f64;
                p2.push([
                    Point2 { x: x0 * s, y: y0 * s },
                    Point2 { x: (x0 + dx) * s, y: (y0 + dy) * s },
                    Point2 { x: (x0 + k * dx) * s, y: (y0 + k * dy) * s },
                ]);
                continue;
            }
        };
        p2.push([a, b, c]);
    }
    for i in 0..count {
        let rp = |rng: &mut ChaCha8Rng| Point3 { x: rng.random_range(-1.0..1.0), y: rng.random_range(-1.0..1.0), z: rng.random_range(-1.0..1.0) };
        let (a, b, c) = (rp(&mut rng), rp(&mut rng), rp(&mut rng));
        let d = match i % 4 {
            0 => rp(&mut rng),
            1 | 2 => {
                let (s, t): (f64, f64) = (rng.random_range(-1.0..2.0), rng.random_range(-1.0..2.0));
                let p = Point3 {
                    x: a.x + s * (b.x - a.x) + t * (c.x - a.x),
                    y: a.y + s * (b.y - a.y) + t * (c.y - a.y),
                    z: a.z + s * (b.z - a.z) + t * (c.z - a.z),
                };
                if i % 4 == 1 {
                    p
                } else {
                    Point3 { x: nudge(p.x, rng.random_range(-2..=2)), y: p.y, z: nudge(p.z, rng.random_range(-2..=2)) }
                }
            }
            _ => {
                let k = |rng: &mut ChaCha8Rng| rng.random_range(-20..20) as f64;
                let (a, u, v) = ([k(&mut rng), k(&mut rng), k(&mut rng)], [k(&mut rng), k(&mut rng), k(&mut rng)], [k(&mut rng), k(&mut rng), k(&mut rng)]);
                let mk = |s: f64, t: f64| Point3 { x: a[0] + s * u[0] + t * v[0], y: a[1] + s * u[1] + t * v[1], z: a[2] + s * u[2] + t * v[2] };
                p3.push([mk(0.0, 0.0), mk(1.0, 0.0), mk(0.0, 1.0), mk(k(&mut rng), k(&mut rng))]);
                continue;
            }
        };
        p3.push([a, b, c, d]);
    }
    (p2, p3)
}

fn predicates(c: &mut Checks) {
    let count = 100_000;
    let (p2, p3) = predicate_cases(count, 10);
    let bad2 = p2.iter().filter(|[a, b, q]| orient2d(a, b, q) != det2_sign(a, b, q)).count();
    let bad3 = p3.iter().filter(|[a, b, q, d]| orient3d(a, b, q, d) != det3_sign(a, b, q, d)).count();
    let zeros = p2.iter().filter(|[a, b, q]| det2_sign(a, b, q) == 0).count();
    c.check(bad2 == 0, format!("orient2d: {bad2}/{count} mismatches vs rational oracle ({zeros} exact zeros)"));
    c.check(bad3 == 0, format!("orient3d: {bad3}/{count} mismatches vs rational oracle"));
}
