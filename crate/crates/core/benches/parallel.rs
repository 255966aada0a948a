//! Sequential against rayon execution on the data-parallel paths.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use iogeom::bench::{geometric_ladder, run_experiment, Algorithm, ExperimentConfig};
use iogeom::hull3d::{hull3d, Hull3Config};
use iogeom::instances::{generate, Family, InstanceSpec};
use iogeom::par::Execution;
use iogeom::reporting::{encode_relation, report_adaptive, ReportConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn hull3d_rounds(c: &mut Criterion) {
    let g = generate(&InstanceSpec::new(Family::UniformBall, 1 << 15, 1).unwrap()).unwrap();
    let seq = g.instance.points3().unwrap();
    let mut group = c.benchmark_group("hull3d");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = Hull3Config { exec, ..Default::default() };
        group.bench_with_input(BenchmarkId::new(name, seq.len()), &cfg, |b, cfg| b.iter(|| hull3d(seq, cfg).unwrap()));
    }
    group.finish();
}

fn reporting_rounds(c: &mut Criterion) {
    let g = generate(&InstanceSpec::new(Family::RangerepRandom, 1 << 14, 1).unwrap()).unwrap();
    let inst = encode_relation(&g.instance).unwrap();
    let mut group = c.benchmark_group("report_adaptive");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = ReportConfig { exec, ..Default::default() };
        group.bench_with_input(BenchmarkId::new(name, inst.len()), &cfg, |b, cfg| b.iter(|| report_adaptive(&inst, cfg).unwrap()));
    }
    group.finish();
}

fn experiment_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_experiment");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = ExperimentConfig {
            exec,
            entropy: false,
            ..ExperimentConfig::new("uniform-disk", geometric_ladder(10, 13), 4, &[Algorithm::Hull2d.name(), Algorithm::Maxima2d.name()], 2).unwrap()
        };
        group.bench_with_input(BenchmarkId::new(name, "disk-ladder"), &cfg, |b, cfg| b.iter(|| run_experiment(cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, hull3d_rounds, reporting_rounds, experiment_grid);
criterion_main!(benches);
