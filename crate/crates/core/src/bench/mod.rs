//! Scaling experiments: run algorithms over a size ladder of generated
//! instances, write one CSV row per run, and fit cost bands.

mod fit;
pub mod presets;

use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::{entropy_report, Problem};
use crate::error::{Error, Result};
use crate::geom::{CostMeter, PointSequence};
use crate::hull2d::hull2d;
use crate::hull3d::{hull3d, hull3d_oracle, Hull3Config, Hull3Oracle};
use crate::instances::{generate, Family, Instance, InstanceKind, InstanceSpec, RangeInstance, SegmentSet};
use crate::maxima::{maxima2d, maxima_oracle, OracleMethod};
use crate::par::{self, Execution};
use crate::reporting::{count_adaptive, encode_relation, report_adaptive, safety_partition, segint_sweep_oracle, CountMode, ReportConfig};

pub use fit::{fit_scaling, BandCheck, LadderPoint, ScalingFit, SeriesFit, Thresholds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Maxima2d,
    MaximaSortscan,
    Hull2d,
    Hull3d,
    Hull3dIncremental,
    Report,
    CountTotal,
    CountIndividual,
    SegintSweep,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Maxima2d,
        Algorithm::MaximaSortscan,
        Algorithm::Hull2d,
        Algorithm::Hull3d,
        Algorithm::Hull3dIncremental,
        Algorithm::Report,
        Algorithm::CountTotal,
        Algorithm::CountIndividual,
        Algorithm::SegintSweep,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Maxima2d => "maxima2d",
            Algorithm::MaximaSortscan => "maxima-sortscan",
            Algorithm::Hull2d => "hull2d",
            Algorithm::Hull3d => "hull3d",
            Algorithm::Hull3dIncremental => "hull3d-incremental",
            Algorithm::Report => "report",
            Algorithm::CountTotal => "count-total",
            Algorithm::CountIndividual => "count-individual",
            Algorithm::SegintSweep => "segint-sweep",
        }
    }

    pub fn accepts(&self, kind: InstanceKind) -> bool {
        match self {
            Algorithm::Maxima2d | Algorithm::MaximaSortscan | Algorithm::Hull2d => kind == InstanceKind::Points2,
            Algorithm::Hull3d | Algorithm::Hull3dIncremental => kind == InstanceKind::Points3,
            Algorithm::Report | Algorithm::CountTotal | Algorithm::CountIndividual => {
                matches!(kind, InstanceKind::Segments | InstanceKind::Ranges)
            }
            Algorithm::SegintSweep => kind == InstanceKind::Segments,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Algorithm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Algorithm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s.trim())
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// One experiment: a family over a size ladder, `seeds` instances per size
/// and `perms` shuffles of each instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub seeds: u64,
    /// Instance seeds are `base_seed .. base_seed + seeds`.
    pub base_seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub perms: usize,
    pub output: Option<PathBuf>,
    /// Record wall time; off by default so output is byte-reproducible.
    pub wall: bool,
    /// Compute h_kd, h_vert and F(S)/n per instance.
    pub entropy: bool,
    pub delta: Option<f64>,
    pub cap: Option<f64>,
    pub exec: Execution,
}

impl ExperimentConfig {
    /// Names are resolved here, so a typo fails before anything runs.
    pub fn new(family: &str, sizes: Vec<usize>, seeds: u64, algorithms: &[&str], perms: usize) -> Result<Self> {
        let family: Family = family.parse()?;
        let algorithms = algorithms.iter().map(|a| a.parse()).collect::<Result<Vec<Algorithm>>>()?;
        let cfg = ExperimentConfig {
            family,
            sizes,
            seeds,
            base_seed: 0,
            algorithms,
            perms,
            output: None,
            wall: false,
            entropy: true,
            delta: None,
            cap: None,
            exec: Execution::Sequential,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Experiment(m));
        if self.sizes.is_empty() {
            return bad("empty size ladder".into());
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("sizes must be strictly increasing: {:?}", self.sizes));
        }
        if self.sizes[0] < self.family.min_n() {
            return bad(format!("{} needs n >= {}", self.family, self.family.min_n()));
        }
        if self.seeds == 0 || self.perms == 0 {
            return bad("seeds and perms must be at least 1".into());
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms".into());
        }
        if let Some(a) = self.algorithms.iter().find(|a| !a.accepts(self.family.kind())) {
            return bad(format!("{a} does not run on {} instances", self.family));
        }
        if self.delta.is_some_and(|d| !(d > 0.0)) || self.cap.is_some_and(|c| !(c > 0.0 && c <= 1.0)) {
            return bad("delta must be positive and cap in (0, 1]".into());
        }
        Ok(())
    }
}

/// Sizes `2^lo, 2^(lo+1), ..., 2^hi`.
pub fn geometric_ladder(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|k| 1usize << k).collect()
}

/// One CSV row. Missing diagnostics are empty fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub perm: usize,
    pub algorithm: String,
    pub comparisons: u64,
    pub orient2d: u64,
    pub orient3d: u64,
    pub dominance: u64,
    pub output_size: u64,
    pub h_kd: Option<f64>,
    pub h_vert: Option<f64>,
    pub f_per_n: Option<f64>,
    pub wall_ns: u64,
}

impl Row {
    /// Comparisons plus orientation tests.
    pub fn cost(&self) -> u64 {
        self.comparisons + self.orient2d + self.orient3d
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Diagnostics {
    h_kd: Option<f64>,
    h_vert: Option<f64>,
    f_per_n: Option<f64>,
}

fn diagnostics(inst: &Instance, algorithms: &[Algorithm]) -> Result<Diagnostics> {
    Ok(match inst {
        Instance::Points2(seq) => {
            let problem = if algorithms.iter().any(|a| matches!(a, Algorithm::Maxima2d | Algorithm::MaximaSortscan)) {
                Problem::Maxima2d
            } else {
                Problem::Upperhull2d
            };
            let r = entropy_report(seq, problem, None)?;
            Diagnostics {
                h_kd: Some(r.h_kd),
                h_vert: Some(r.h_vert),
                f_per_n: (problem == Problem::Maxima2d).then(|| r.f_per_n()),
            }
        }
        Instance::Segments(_) | Instance::Ranges(_) => {
            Diagnostics { h_kd: Some(safety_partition(&encode_relation(inst)?)?.entropy()), ..Default::default() }
        }
        Instance::Points3(_) => Diagnostics::default(),
    })
}

fn mix(seed: u64, perm: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (perm as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9) ^ 0x94d0_49bb_1331_11eb
}

fn shuffled<T: Clone>(items: &[T], rng: &mut ChaCha8Rng) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}

/// A uniformly random relabeling of `inst`.
pub fn shuffle_instance(inst: &Instance, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match inst {
        Instance::Points2(s) => Instance::Points2(PointSequence::new(shuffled(s.points(), &mut rng))?),
        Instance::Points3(s) => Instance::Points3(PointSequence::new(shuffled(s.points(), &mut rng))?),
        Instance::Segments(s) => Instance::Segments(SegmentSet {
            horizontal: shuffled(&s.horizontal, &mut rng),
            vertical: shuffled(&s.vertical, &mut rng),
        }),
        Instance::Ranges(r) => Instance::Ranges(RangeInstance {
            points: shuffled(&r.points, &mut rng),
            rects: shuffled(&r.rects, &mut rng),
        }),
    })
}

/// Runs one algorithm; returns its meter and output size.
pub fn run_algorithm(alg: Algorithm, inst: &Instance, seed: u64, cfg: &ExperimentConfig) -> Result<(CostMeter, u64)> {
    let wrong = || Error::Experiment(format!("{alg} does not run on {} instances", inst.kind()));
    let hull3 = Hull3Config {
        delta: cfg.delta.unwrap_or(Hull3Config::default().delta),
        cap: cfg.cap.unwrap_or(Hull3Config::default().cap),
        seed,
        exec: cfg.exec,
    };
    let report = ReportConfig { delta: cfg.delta.unwrap_or(ReportConfig::default().delta), seed, exec: cfg.exec };
    match alg {
        Algorithm::Maxima2d => {
            let r = maxima2d(inst.points2().ok_or_else(wrong)?, seed)?;
            Ok((r.meter, r.maximal.len() as u64))
        }
        Algorithm::MaximaSortscan => {
            let r = maxima_oracle(inst.points2().ok_or_else(wrong)?.points(), OracleMethod::Sortscan)?;
            Ok((r.meter, r.maximal.len() as u64))
        }
        Algorithm::Hull2d => {
            let r = hull2d(inst.points2().ok_or_else(wrong)?, seed)?;
            Ok((r.meter, r.vertices.len() as u64))
        }
        Algorithm::Hull3d => {
            let r = hull3d(inst.points3().ok_or_else(wrong)?, &hull3)?;
            Ok((r.hull.meter, r.hull.vertices.len() as u64))
        }
        Algorithm::Hull3dIncremental => {
            let r = hull3d_oracle(inst.points3().ok_or_else(wrong)?.points(), Hull3Oracle::Incremental, seed)?;
            Ok((r.meter, r.vertices.len() as u64))
        }
        Algorithm::Report => {
            let (r, _) = report_adaptive(&encode_relation(inst)?, &report)?;
            Ok((r.meter, r.k as u64))
        }
        Algorithm::CountTotal | Algorithm::CountIndividual => {
            let mode = if alg == Algorithm::CountTotal { CountMode::Total } else { CountMode::Individual };
            let c = count_adaptive(&encode_relation(inst)?, mode, &report)?;
            Ok((c.meter, c.total))
        }
        Algorithm::SegintSweep => {
            let Instance::Segments(s) = inst else { return Err(wrong()) };
            let r = segint_sweep_oracle(s)?;
            Ok((r.meter, r.k as u64))
        }
    }
}

/// Runs the whole grid. Rows come out sorted by (n, seed, perm, algorithm
/// order in the config) whatever the execution mode.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    cfg.validate()?;
    let jobs: Vec<(usize, u64)> = cfg
        .sizes
        .iter()
        .flat_map(|&n| (cfg.base_seed..cfg.base_seed + cfg.seeds).map(move |s| (n, s)))
        .collect();
    let family = cfg.family.to_string();
    let per_job = par::map(cfg.exec, &jobs, |&(n, seed)| -> Result<Vec<Row>> {
        let g = generate(&InstanceSpec::new(cfg.family, n, seed)?)?;
        let diag = if cfg.entropy { diagnostics(&g.instance, &cfg.algorithms)? } else { Diagnostics::default() };
        let mut rows = Vec::with_capacity(cfg.perms * cfg.algorithms.len());
        for perm in 0..cfg.perms {
            let inst = shuffle_instance(&g.instance, mix(seed, perm))?;
            for &alg in &cfg.algorithms {
                let (meter, output) = run_algorithm(alg, &inst, mix(seed, perm).rotate_left(17), cfg)?;
                rows.push(Row {
                    family: family.clone(),
                    n,
                    seed,
                    perm,
                    algorithm: alg.to_string(),
                    comparisons: meter.comparisons,
                    orient2d: meter.orient2d_calls,
                    orient3d: meter.orient3d_calls,
                    dominance: meter.dominance_tests,
                    output_size: output,
                    h_kd: diag.h_kd,
                    h_vert: diag.h_vert,
                    f_per_n: diag.f_per_n,
                    wall_ns: if cfg.wall { meter.wall_ns } else { 0 },
                });
            }
        }
        Ok(rows)
    });
    let mut rows = Vec::new();
    for r in per_job {
        rows.extend(r?);
    }
    if let Some(path) = &cfg.output {
        write_csv(&rows, std::fs::File::create(path)?)?;
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<Row>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Experiment(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

pub fn csv_string(rows: &[Row]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Experiment(e.to_string()))
}

pub const CSV_HEADER: [&str; 14] = [
    "family",
    "n",
    "seed",
    "perm",
    "algorithm",
    "comparisons",
    "orient2d",
    "orient3d",
    "dominance",
    "output_size",
    "h_kd",
    "h_vert",
    "f_per_n",
    "wall_ns",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_roundtrip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("quickhull".parse::<Algorithm>().is_err());
    }

    #[test]
    fn ladder_is_geometric() {
        assert_eq!(geometric_ladder(3, 5), vec![8, 16, 32]);
    }
}
