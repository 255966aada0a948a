use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use iogeom::adversary::{adversary_run, MaximaProcedure, DEFAULT_C_AMORT};
use iogeom::bench::presets::{run_preset, PRESETS};
use iogeom::bench::{fit_scaling, read_csv, run_experiment, write_csv, Algorithm, ExperimentConfig, Thresholds};
use iogeom::entropy::{entropy_report, Problem};
use iogeom::geom::{Point2, Point3, PointSequence};
use iogeom::hull2d::{hull2d, hull2d_oracle, HullOracle};
use iogeom::hull3d::{hull3d, hull3d_oracle, Hull3Config, Hull3Oracle};
use iogeom::instances::{generate, io, Family, Instance, InstanceSpec};
use iogeom::maxima::{maxima2d, maxima_oracle, OracleMethod};
use iogeom::par::Execution;
use iogeom::reporting::{count_adaptive, encode_relation, report_adaptive, safety_partition, CountMode, ReportConfig};

#[derive(Parser)]
#[command(name = "iogeom", version, about = "Adaptive maxima, hull and reporting algorithms with cost metering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal points of a 2-d set.
    Maxima {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = MaximaAlg::Maxima2d)]
        algorithm: MaximaAlg,
    },
    /// Upper hull of a 2-d set.
    Hull2d {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = Hull2Alg::Hull2d)]
        algorithm: Hull2Alg,
    },
    /// Upper hull of a 3-d set.
    Hull3d {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = Hull3Alg::Hull3d)]
        algorithm: Hull3Alg,
        #[command(flatten)]
        rounds: Rounds,
    },
    /// Horizontal/vertical segment intersections.
    Segint {
        #[command(flatten)]
        rel: RelationArgs,
    },
    /// Points inside axis-parallel rectangles.
    Rangerep {
        #[command(flatten)]
        rel: RelationArgs,
    },
    /// Structural entropy, k-d and vertical partitions, and F(S).
    Entropy {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = ProblemArg::Maxima)]
        problem: ProblemArg,
    },
    /// Run a maxima procedure against the lower-bound adversary.
    Adversary {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = MaximaAlg::Maxima2d)]
        algorithm: MaximaAlg,
        #[arg(long, default_value_t = DEFAULT_C_AMORT)]
        c_amort: f64,
    },
    /// Scaling experiment over a size ladder, or a named acceptance preset.
    Bench(BenchArgs),
    /// Fit cost bands to a CSV written by `bench`.
    Fit {
        /// CSV input.
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        band_n: Option<f64>,
        #[arg(long)]
        band_nlogn: Option<f64>,
        #[arg(long)]
        entropy_const: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

/// Where the instance comes from: a file, or a generated family.
#[derive(Args)]
struct Source {
    /// Instance file (points, `H`/`V` segments or `R` rectangles).
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// Generator and algorithm seed.
    #[arg(long, env = "GEOM_SEED", default_value_t = 0)]
    seed: u64,
    /// Print JSON instead of a summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Rounds {
    /// Round count parameter: rounds j = 0..=floor(log2(delta log2 n)).
    #[arg(long)]
    delta: Option<f64>,
    /// Cells per round are capped at n^cap.
    #[arg(long)]
    cap: Option<f64>,
}

#[derive(Args)]
struct RelationArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long, value_enum, default_value_t = RelMode::Report)]
    mode: RelMode,
    #[arg(long)]
    delta: Option<f64>,
    /// Most pairs listed in the output; K is always exact.
    #[arg(long, default_value_t = 100)]
    limit: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Acceptance preset name or number; other options are then ignored.
    #[arg(long)]
    preset: Option<String>,
    /// List the presets.
    #[arg(long)]
    list_presets: bool,
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated sizes; default is the ladder 2^lo..2^hi.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    lo: u32,
    #[arg(long, default_value_t = 14)]
    hi: u32,
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    /// First instance seed.
    #[arg(long, env = "GEOM_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    perms: usize,
    /// Comma-separated algorithm names.
    #[arg(long, value_delimiter = ',')]
    algorithms: Vec<String>,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    cap: Option<f64>,
    /// Record wall-clock time (makes the CSV non-reproducible).
    #[arg(long)]
    wall: bool,
    /// Skip the entropy diagnostics.
    #[arg(long)]
    no_entropy: bool,
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MaximaAlg {
    Maxima2d,
    Sortscan,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum Hull2Alg {
    Hull2d,
    MonotoneChain,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum Hull3Alg {
    Hull3d,
    Incremental,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelMode {
    Report,
    CountTotal,
    CountIndividual,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Maxima,
    Hull2d,
}

impl Source {
    fn load(&self, default_family: &str) -> Result<Instance> {
        if let Some(path) = &self.input {
            return io::load(path).with_context(|| format!("reading {}", path.display()));
        }
        let family: Family = self.family.as_deref().unwrap_or(default_family).parse()?;
        Ok(generate(&InstanceSpec::new(family, self.n, self.seed)?)?.instance)
    }

    fn points2(&self, default_family: &str) -> Result<PointSequence<Point2>> {
        match self.load(default_family)? {
            Instance::Points2(s) => Ok(s),
            other => bail!("expected a 2-d point set, got {}", other.kind()),
        }
    }

    fn points3(&self, default_family: &str) -> Result<PointSequence<Point3>> {
        match self.load(default_family)? {
            Instance::Points3(s) => Ok(s),
            other => bail!("expected a 3-d point set, got {}", other.kind()),
        }
    }
}

fn emit(json: bool, value: &Value, summary: impl FnOnce() -> String) -> Result<()> {
    let text = if json { serde_json::to_string_pretty(value)? } else { summary() };
    writeln!(std::io::stdout().lock(), "{text}")?;
    Ok(())
}

fn meter_line(m: &iogeom::geom::CostMeter) -> String {
    format!(
        "comparisons={} orient2d={} orient3d={} dominance={} total={}",
        m.comparisons,
        m.orient2d_calls,
        m.orient3d_calls,
        m.dominance_tests,
        m.total_tests()
    )
}

fn relation(rel: &RelationArgs, default_family: &str, want_segments: bool) -> Result<()> {
    let raw = rel.src.load(default_family)?;
    match (&raw, want_segments) {
        (Instance::Segments(_), true) | (Instance::Ranges(_), false) => {}
        _ => bail!("{} is not a {} instance", raw.kind(), if want_segments { "segment" } else { "range" }),
    }
    let inst = encode_relation(&raw)?;
    let cfg = ReportConfig { delta: rel.delta.unwrap_or(ReportConfig::default().delta), seed: rel.src.seed, exec: Execution::best() };
    let part = safety_partition(&inst)?;
    let entropy = json!({ "h_safety": part.entropy(), "blocks": part.subsets().len() });
    match rel.mode {
        RelMode::Report => {
            let (r, phases) = report_adaptive(&inst, &cfg)?;
            let v = json!({
                "K": r.k,
                "pairs": &r.pairs[..r.pairs.len().min(rel.limit)],
                "truncated": r.pairs.len() > rel.limit,
                "meter": r.meter.counts_only(),
                "phases": phases,
                "entropy": entropy,
            });
            emit(rel.src.json, &v, || format!("K={} n={}  {}", r.k, inst.len(), meter_line(&r.meter)))
        }
        RelMode::CountTotal | RelMode::CountIndividual => {
            let mode = if matches!(rel.mode, RelMode::CountTotal) { CountMode::Total } else { CountMode::Individual };
            let c = count_adaptive(&inst, mode, &cfg)?;
            let v = json!({
                "K": c.total,
                "red_counts": c.red,
                "blue_counts": c.blue,
                "meter": c.meter.counts_only(),
                "phases": c.phases,
                "entropy": entropy,
            });
            emit(rel.src.json, &v, || format!("K={} n={}  {}", c.total, inst.len(), meter_line(&c.meter)))
        }
    }
}

fn bench(b: &BenchArgs) -> Result<bool> {
    let exec = if b.sequential { Execution::Sequential } else { Execution::best() };
    if b.list_presets {
        let mut out = std::io::stdout().lock();
        for p in PRESETS {
            writeln!(out, "{p}")?;
        }
        return Ok(true);
    }
    if let Some(name) = &b.preset {
        let out = run_preset(name, exec)?;
        if b.json {
            println!("{}", serde_json::to_string_pretty(&out)?);
        } else {
            for d in &out.details {
                println!("  {d}");
            }
            println!("{} {}", if out.pass { "PASS" } else { "FAIL" }, out.name);
        }
        if let Some(path) = &b.csv {
            write_csv(&out.rows, std::fs::File::create(path)?)?;
        }
        return Ok(out.pass);
    }
    let family = b.family.as_deref().context("--family is required without --preset")?;
    let sizes = if b.n.is_empty() { iogeom::bench::geometric_ladder(b.lo, b.hi) } else { b.n.clone() };
    let algs: Vec<&str> = if b.algorithms.is_empty() { default_algorithms(family)? } else { b.algorithms.iter().map(String::as_str).collect() };
    let mut cfg = ExperimentConfig::new(family, sizes, b.seeds, &algs, b.perms)?;
    cfg.base_seed = b.seed;
    cfg.wall = b.wall;
    cfg.entropy = !b.no_entropy;
    cfg.delta = b.delta;
    cfg.cap = b.cap;
    cfg.exec = exec;
    cfg.validate()?;
    let rows = run_experiment(&cfg)?;
    match &b.csv {
        Some(path) => write_csv(&rows, std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?)?,
        None => write_csv(&rows, std::io::stdout().lock())?,
    }
    Ok(true)
}

fn default_algorithms(family: &str) -> Result<Vec<&'static str>> {
    let kind = family.parse::<Family>()?.kind();
    Ok(Algorithm::ALL.iter().filter(|a| a.accepts(kind)).map(|a| a.name()).collect())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Maxima { src, algorithm } => {
            let seq = src.points2("maxima-easy")?;
            let r = match algorithm {
                MaximaAlg::Maxima2d => maxima2d(&seq, src.seed)?,
                MaximaAlg::Sortscan => maxima_oracle(seq.points(), OracleMethod::Sortscan)?,
                MaximaAlg::Bruteforce => maxima_oracle(seq.points(), OracleMethod::Bruteforce)?,
            };
            emit(src.json, &json!({ "n": seq.len(), "h": r.maximal.len(), "maximal": r.maximal, "meter": r.meter.counts_only() }), || {
                format!("n={} h={}  {}", seq.len(), r.maximal.len(), meter_line(&r.meter))
            })?;
        }
        Command::Hull2d { src, algorithm } => {
            let seq = src.points2("hull2d-easy")?;
            let r = match algorithm {
                Hull2Alg::Hull2d => hull2d(&seq, src.seed)?,
                Hull2Alg::MonotoneChain => hull2d_oracle(seq.points(), HullOracle::MonotoneChain),
                Hull2Alg::Bruteforce => hull2d_oracle(seq.points(), HullOracle::Bruteforce),
            };
            emit(src.json, &json!({ "n": seq.len(), "h": r.vertices.len(), "vertices": r.vertices, "meter": r.meter.counts_only() }), || {
                format!("n={} h={}  {}", seq.len(), r.vertices.len(), meter_line(&r.meter))
            })?;
        }
        Command::Hull3d { src, algorithm, rounds } => {
            let seq = src.points3("hull3d-easy")?;
            let d = Hull3Config::default();
            let cfg = Hull3Config { delta: rounds.delta.unwrap_or(d.delta), cap: rounds.cap.unwrap_or(d.cap), seed: src.seed, exec: Execution::best() };
            let (hull, stats) = match algorithm {
                Hull3Alg::Hull3d => {
                    let r = hull3d(&seq, &cfg)?;
                    (r.hull, json!(r.rounds))
                }
                Hull3Alg::Incremental => (hull3d_oracle(seq.points(), Hull3Oracle::Incremental, src.seed)?, Value::Null),
                Hull3Alg::Bruteforce => (hull3d_oracle(seq.points(), Hull3Oracle::Bruteforce, src.seed)?, Value::Null),
            };
            let v = json!({
                "n": seq.len(),
                "h": hull.vertices.len(),
                "vertices": hull.vertices,
                "facets": hull.facets,
                "meter": hull.meter.counts_only(),
                "rounds": stats,
            });
            emit(src.json, &v, || format!("n={} h={} facets={}  {}", seq.len(), hull.vertices.len(), hull.facets.len(), meter_line(&hull.meter)))?;
        }
        Command::Segint { rel } => relation(&rel, "segint-crossing-grid", true)?,
        Command::Rangerep { rel } => relation(&rel, "rangerep-random", false)?,
        Command::Entropy { src, problem } => {
            let seq = src.points2("maxima-easy")?;
            let p = match problem {
                ProblemArg::Maxima => Problem::Maxima2d,
                ProblemArg::Hull2d => Problem::Upperhull2d,
            };
            let r = entropy_report(&seq, p, None)?;
            emit(src.json, &json!(r), || {
                format!(
                    "n={} h={} H={:.4} H_vert={:.4} H_kd={:.4} F/n={:.4}",
                    r.n,
                    r.h_output,
                    r.h_partition,
                    r.h_vert,
                    r.h_kd,
                    r.f_per_n()
                )
            })?;
        }
        Command::Adversary { src, algorithm, c_amort } => {
            let seq = src.points2("maxima-hard")?;
            let proc = match algorithm {
                MaximaAlg::Maxima2d => MaximaProcedure::Maxima2d { seed: src.seed },
                MaximaAlg::Sortscan => MaximaProcedure::Sortscan,
                MaximaAlg::Bruteforce => bail!("the adversary runs maxima2d or sortscan"),
            };
            let r = adversary_run(&seq, proc, c_amort)?;
            emit(src.json, &json!(r), || {
                format!(
                    "n={} T={} D={} ordinary={} exceptional={} h_kd={:.4} amortized_ok={} replay_ok={}",
                    seq.len(),
                    r.t,
                    r.d,
                    r.ordinary,
                    r.exceptional,
                    r.h_kd,
                    r.amortized_ok,
                    r.replay_ok
                )
            })?;
        }
        Command::Bench(b) => return bench(&b),
        Command::Fit { csv, band_n, band_nlogn, entropy_const, json } => {
            let rows = read_csv(std::fs::File::open(&csv).with_context(|| format!("opening {}", csv.display()))?)?;
            let fit = fit_scaling(&rows)?;
            let checks = fit.check(&Thresholds { band_n, band_nlogn, entropy_const });
            let pass = checks.iter().all(|c| c.pass);
            if json {
                println!("{}", serde_json::to_string_pretty(&json!({ "fit": fit, "checks": checks, "pass": pass }))?);
            } else {
                for s in &fit.series {
                    println!("{} {}", s.family, s.algorithm);
                    for p in &s.points {
                        println!("  n={:<8} runs={:<4} cost/n={:<10.3} cost/(n log n)={:.3}", p.n, p.runs, p.per_n, p.per_nlogn);
                    }
                    let ec = s.entropy_const.map(|c| format!("{c:.3}")).unwrap_or_else(|| "-".into());
                    println!("  band cost/n={:.3} band cost/(n log n)={:.3} max cost/(n(h_kd+1))={ec}", s.band_n, s.band_nlogn);
                }
                for c in &checks {
                    println!("{} {} {}: {} = {:.3} (max {})", if c.pass { "PASS" } else { "FAIL" }, c.family, c.algorithm, c.metric, c.value, c.threshold);
                }
            }
            return Ok(pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
