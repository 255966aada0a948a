mod common;

use common::{p, seq};
use iogeom::geom::{Point2, Point3, PointSequence};
use iogeom::hull2d::{hull2d, hull2d_oracle, upper_bridge, verify_upper_hull, HullOracle};
use iogeom::hull3d::{hull3d, hull3d_oracle, round_sizes, verify_upper_hull3, Hull3Config, Hull3Oracle};
use iogeom::instances::{generate, Family, InstanceSpec};
use iogeom::maxima::{maxima2d, maxima_oracle, OracleMethod};
use iogeom::par::Execution;

fn points2(family: Family, n: usize, seed: u64) -> PointSequence<Point2> {
    generate(&InstanceSpec::new(family, n, seed).unwrap()).unwrap().instance.points2().unwrap().clone()
}

fn points3(family: Family, n: usize, seed: u64) -> PointSequence<Point3> {
    generate(&InstanceSpec::new(family, n, seed).unwrap()).unwrap().instance.points3().unwrap().clone()
}

/// Maximal ids by definition, left to right.
fn maxima_by_definition(pts: &[Point2]) -> Vec<usize> {
    let mut m: Vec<usize> = (0..pts.len())
        .filter(|&i| !pts.iter().any(|q| q.x > pts[i].x && q.y > pts[i].y))
        .collect();
    m.sort_by(|&a, &b| pts[a].x.total_cmp(&pts[b].x));
    m
}

#[test]
fn maxima_hand_example() {
    let s = seq(vec![p(0.0, 3.0), p(1.0, 1.0), p(2.0, 2.0), p(3.0, 0.0)]);
    let r = maxima2d(&s, 1).unwrap();
    assert_eq!(r.maximal, vec![0, 2, 3]);
    assert_eq!(r.witness, vec![(1, 2)]);
}

#[test]
fn maxima_matches_definition() {
    let families = [Family::UniformSquare, Family::MaximaEasy { h: 4 }, Family::MaximaHard, Family::Clustered { k: 5 }, Family::UniformDisk];
    for seed in 0..150u64 {
        let family = families[seed as usize % families.len()];
        let n = 1 + (seed as usize * 7) % 200;
        if n < family.min_n() {
            continue;
        }
        let s = points2(family, n, seed);
        let want = maxima_by_definition(s.points());
        let got = maxima2d(&s, seed).unwrap();
        assert_eq!(got.maximal, want, "{family} n={n} seed={seed}");
        for &(d, w) in &got.witness {
            let (a, b) = (s.points()[w], s.points()[d]);
            assert!(a.x > b.x && a.y > b.y);
            assert!(want.contains(&w));
        }
        assert_eq!(got.witness.len() + want.len(), n);
        for method in [OracleMethod::Bruteforce, OracleMethod::Sortscan] {
            assert_eq!(maxima_oracle(s.points(), method).unwrap().maximal, want);
        }
    }
}

#[test]
fn maxima_rejects_shared_coordinates() {
    let s = PointSequence::new(vec![p(0.0, 1.0), p(0.0, 2.0)]).unwrap();
    assert!(maxima2d(&s, 0).is_err());
}

#[test]
fn hull2d_matches_oracles() {
    let families = [Family::UniformDisk, Family::Hull2dEasy, Family::Hull2dHard, Family::UniformSquare, Family::Clustered { k: 3 }];
    for seed in 0..150u64 {
        let family = families[seed as usize % families.len()];
        let n = 2 + (seed as usize * 11) % 300;
        if n < family.min_n() {
            continue;
        }
        let s = points2(family, n, seed);
        let got = hull2d(&s, seed).unwrap();
        let chain = hull2d_oracle(s.points(), HullOracle::MonotoneChain);
        assert_eq!(got.vertices, chain.vertices, "{family} n={n} seed={seed}");
        assert!(verify_upper_hull(s.points(), &got.vertices));
        if n <= 64 {
            assert_eq!(hull2d_oracle(s.points(), HullOracle::Bruteforce).vertices, chain.vertices);
        }
    }
}

#[test]
fn bridge_crosses_the_split() {
    let s = points2(Family::UniformDisk, 200, 9);
    let chain = hull2d_oracle(s.points(), HullOracle::MonotoneChain).vertices;
    let pts = s.points();
    let mut xs: Vec<f64> = pts.iter().map(|q| q.x).collect();
    xs.sort_by(f64::total_cmp);
    let xm = xs[99];
    let (a, b) = upper_bridge(pts, xm, 3, &mut Default::default()).unwrap();
    assert!(pts[a].x <= xm && pts[b].x > xm);
    let ia = chain.iter().position(|&v| v == a).unwrap();
    assert_eq!(chain[ia + 1], b);
}

#[test]
fn hull2d_small_inputs() {
    assert!(hull2d(&seq(vec![p(0.0, 0.0)]), 0).is_err());
    assert_eq!(hull2d(&seq(vec![p(1.0, 0.0), p(0.0, 1.0)]), 0).unwrap().vertices, vec![1, 0]);
    let t = seq(vec![p(0.0, 0.0), p(1.0, 2.0), p(2.0, 0.5), p(3.0, 1.0)]);
    assert_eq!(hull2d(&t, 0).unwrap().vertices, vec![0, 1, 3]);
}

#[test]
fn hull3d_matches_oracles() {
    let families = [Family::UniformBall, Family::Hull3dEasy, Family::Hull3dHard];
    for seed in 0..60u64 {
        let family = families[seed as usize % families.len()];
        let n = 4 + (seed as usize * 13) % 45;
        let s = points3(family, n, seed);
        let cfg = Hull3Config { seed, ..Default::default() };
        let got = hull3d(&s, &cfg).unwrap().hull;
        let brute = hull3d_oracle(s.points(), Hull3Oracle::Bruteforce, 0).unwrap();
        assert_eq!(got.vertices, brute.vertices, "{family} n={n} seed={seed}");
        assert_eq!(got.facets, brute.facets);
        assert!(verify_upper_hull3(s.points(), &got));
    }
}

#[test]
fn hull3d_pruning_rounds_are_exact() {
    for (seed, family) in [(1u64, Family::UniformBall), (2, Family::Hull3dEasy), (3, Family::Hull3dHard)] {
        let s = points3(family, 3000, seed);
        let oracle = hull3d_oracle(s.points(), Hull3Oracle::Incremental, 7).unwrap();
        for delta in [0.25, 1.0] {
            for exec in [Execution::Sequential, Execution::best()] {
                let cfg = Hull3Config { delta, seed, exec, ..Default::default() };
                let got = hull3d(&s, &cfg).unwrap();
                assert_eq!(got.hull.vertices, oracle.vertices);
                assert_eq!(got.hull.facets, oracle.facets);
                assert_eq!(got.rounds.len(), round_sizes(3000, delta, 0.5).len());
                for &i in &got.pruned {
                    assert!(oracle.vertices.binary_search(&i).is_err());
                }
            }
        }
    }
}

#[test]
fn hull3d_easy_prunes_almost_everything() {
    let s = points3(Family::Hull3dEasy, 1 << 16, 5);
    let cfg = Hull3Config { delta: 1.0, seed: 5, ..Default::default() };
    let got = hull3d(&s, &cfg).unwrap();
    let n = s.len();
    let mut removed = 0;
    let mut reached = false;
    for round in &got.rounds {
        removed += round.pruned;
        if round.r >= 256 {
            reached = true;
            break;
        }
    }
    assert!(reached);
    assert!(removed as f64 >= 0.9 * n as f64, "{removed} of {n}");
    assert_eq!(got.hull.vertices.len(), 4);
}
