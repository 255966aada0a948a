use iogeom::geom::{BoxD, CostMeter, Point2};
use iogeom::instances::{generate, Family, HSeg, Instance, InstanceSpec, RangeInstance, Rect, SegmentSet, VSeg};
use iogeom::reporting::{
    count_adaptive, direct_counts, encode_relation, kd_box_query, report_adaptive, safety_partition, safety_test,
    segint_sweep_oracle, Color, CountMode, Param, QueryMode, Range, RelationInstance, ReportConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Brute-force relation straight from the geometric objects.
fn brute_pairs(raw: &Instance) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    match raw {
        Instance::Segments(s) => {
            for (i, h) in s.horizontal.iter().enumerate() {
                for (j, v) in s.vertical.iter().enumerate() {
                    if h.x0 <= v.x && v.x <= h.x1 && v.y0 <= h.y && h.y <= v.y1 {
                        out.push((i, j));
                    }
                }
            }
        }
        Instance::Ranges(r) => {
            for (i, p) in r.points.iter().enumerate() {
                for (j, q) in r.rects.iter().enumerate() {
                    if q.xlo <= p.x && p.x <= q.xhi && q.ylo <= p.y && p.y <= q.yhi {
                        out.push((i, j));
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    out
}

fn pool(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..k).map(|i| i as f64 + rng.random_range(0.0..0.5)).collect();
    for i in (1..k).rev() {
        v.swap(i, rng.random_range(0..=i));
    }
    v
}

/// Distinct coordinates drawn from a shuffled grid so that ties never occur.
fn random_raw(rng: &mut ChaCha8Rng, n: usize, segments: bool, spread: f64) -> Instance {
    let h = rng.random_range(0..=n);
    let v = n - h;
    let size = 3 * n + 3;
    let mut xs = pool(rng, size);
    let mut ys = pool(rng, size);
    let take2 = |pool: &mut Vec<f64>, rng: &mut ChaCha8Rng| {
        let a = pool.pop().unwrap();
        let w = (rng.random_range(0.0..1.0) * spread * size as f64).max(0.5);
        // Pick the partner nearest a+w from what is left.
        let k = (0..pool.len()).min_by(|&i, &j| (pool[i] - a - w).abs().total_cmp(&(pool[j] - a - w).abs())).unwrap();
        let b = pool.swap_remove(k);
        (a.min(b), a.max(b))
    };
    if segments {
        let horizontal = (0..h)
            .map(|_| {
                let (x0, x1) = take2(&mut xs, rng);
                HSeg { x0, x1, y: ys.pop().unwrap() }
            })
            .collect();
        let vertical = (0..v)
            .map(|_| {
                let (y0, y1) = take2(&mut ys, rng);
                VSeg { x: xs.pop().unwrap(), y0, y1 }
            })
            .collect();
        Instance::Segments(SegmentSet { horizontal, vertical })
    } else {
        let points = (0..h).map(|_| Point2 { x: xs.pop().unwrap(), y: ys.pop().unwrap() }).collect();
        let rects = (0..v)
            .map(|_| {
                let (xlo, xhi) = take2(&mut xs, rng);
                let (ylo, yhi) = take2(&mut ys, rng);
                Rect { xlo, xhi, ylo, yhi }
            })
            .collect();
        Instance::Ranges(RangeInstance { points, rects })
    }
}

fn counts_from_pairs(pairs: &[(usize, usize)], nr: usize, nb: usize) -> (Vec<u64>, Vec<u64>) {
    let (mut r, mut b) = (vec![0; nr], vec![0; nb]);
    for &(i, j) in pairs {
        r[i] += 1;
        b[j] += 1;
    }
    (r, b)
}

fn configs() -> [ReportConfig; 3] {
    [
        ReportConfig::default(),
        ReportConfig { delta: 1.0, seed: 5, ..Default::default() },
        ReportConfig { delta: 2.0, seed: 7, exec: iogeom::par::Execution::best() },
    ]
}

#[test]
fn handmade_cases() {
    let one = Instance::Segments(SegmentSet {
        horizontal: vec![HSeg { x0: 0.0, x1: 2.0, y: 1.0 }],
        vertical: vec![VSeg { x: 1.0, y0: 0.0, y1: 2.0 }],
    });
    let Instance::Segments(s) = &one else { unreachable!() };
    assert_eq!(segint_sweep_oracle(s).unwrap().pairs, vec![(0, 0)]);
    // A short horizontal nested inside the x-range of a tall vertical's gap.
    let nested = SegmentSet {
        horizontal: vec![HSeg { x0: 0.0, x1: 0.5, y: 1.0 }, HSeg { x0: 2.0, x1: 3.0, y: 5.0 }],
        vertical: vec![VSeg { x: 1.0, y0: 0.25, y1: 4.0 }, VSeg { x: 2.5, y0: 0.75, y1: 4.5 }],
    };
    assert_eq!(segint_sweep_oracle(&nested).unwrap().k, 0);
}

#[test]
fn crossing_grid_has_all_pairs() {
    let g = generate(&InstanceSpec::new(Family::SegintCrossingGrid, 32, 1).unwrap()).unwrap();
    let inst = encode_relation(&g.instance).unwrap();
    for cfg in configs() {
        let (rep, _) = report_adaptive(&inst, &cfg).unwrap();
        assert_eq!(rep.k, 256);
        assert_eq!(count_adaptive(&inst, CountMode::Total, &cfg).unwrap().total, 256);
        let ind = count_adaptive(&inst, CountMode::Individual, &cfg).unwrap();
        assert!(ind.red.unwrap().iter().all(|&c| c == 16));
        assert!(ind.blue.unwrap().iter().all(|&c| c == 16));
    }
}

#[test]
fn separated_family_prunes_at_once() {
    let g = generate(&InstanceSpec::new(Family::SegintSeparated, 4096, 2).unwrap()).unwrap();
    let inst = encode_relation(&g.instance).unwrap();
    let (rep, phases) = report_adaptive(&inst, &ReportConfig::default()).unwrap();
    assert_eq!(rep.k, 0);
    let first_round: usize = phases.iter().filter(|p| p.round == 0).map(|p| p.pruned).sum();
    assert_eq!(first_round, inst.len());
    let c = count_adaptive(&inst, CountMode::Individual, &ReportConfig::default()).unwrap();
    assert_eq!(c.total, 0);
    assert!(c.red.unwrap().iter().chain(c.blue.unwrap().iter()).all(|&x| x == 0));
}

#[test]
fn encode_decode_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..100 {
        let raw = random_raw(&mut rng, 30, t % 2 == 0, 0.3);
        assert_eq!(encode_relation(&raw).unwrap().decode(), raw);
    }
}

#[test]
fn degenerate_input_is_rejected() {
    let bad = Instance::Segments(SegmentSet {
        horizontal: vec![HSeg { x0: 0.0, x1: 1.0, y: 1.0 }],
        vertical: vec![VSeg { x: 1.0, y0: 0.0, y1: 2.0 }],
    });
    assert!(encode_relation(&bad).is_err());
}

#[test]
fn adaptive_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in 0..300 {
        let n = rng.random_range(0..=64);
        let spread = [0.02, 0.1, 0.5][t % 3];
        let raw = random_raw(&mut rng, n, t % 2 == 0, spread);
        let inst = encode_relation(&raw).unwrap();
        let want = brute_pairs(&raw);
        let cfg = configs()[t % 3];
        let (rep, _) = report_adaptive(&inst, &cfg).unwrap();
        assert_eq!(rep.pairs, want, "case {t}");
        assert_eq!(count_adaptive(&inst, CountMode::Total, &cfg).unwrap().total, want.len() as u64);
        let (rc, bc) = counts_from_pairs(&want, inst.red.len(), inst.blue.len());
        let ind = count_adaptive(&inst, CountMode::Individual, &cfg).unwrap();
        assert_eq!(ind.red.unwrap(), rc);
        assert_eq!(ind.blue.unwrap(), bc);
        let all_r: Vec<usize> = (0..inst.red.len()).collect();
        let all_b: Vec<usize> = (0..inst.blue.len()).collect();
        assert_eq!(direct_counts(&inst, &all_r, &all_b, &mut CostMeter::new()), (rc, bc));
        if let Instance::Segments(s) = &raw {
            assert_eq!(segint_sweep_oracle(s).unwrap().pairs, want);
        }
    }
}

/// Safety by definition: every point of `color` in the box sees the same partners.
fn semantic_safe(inst: &RelationInstance, color: Color, cell: &BoxD) -> bool {
    let pts = inst.points(color);
    let inside: Vec<usize> = (0..pts.len()).filter(|&i| cell.contains(&pts[i][..cell.dim()])).collect();
    let partners = |i: usize| -> Vec<bool> {
        (0..inst.points(color.other()).len())
            .map(|j| if color == Color::Red { inst.interacts(i, j) } else { inst.interacts(j, i) })
            .collect()
    };
    inside.windows(2).all(|w| partners(w[0]) == partners(w[1]))
}

fn random_box(rng: &mut ChaCha8Rng, pts: &[Param], dim: usize) -> BoxD {
    let a = pts[rng.random_range(0..pts.len())];
    let b = pts[rng.random_range(0..pts.len())];
    let lo: Vec<f64> = (0..dim).map(|k| a[k].min(b[k]) - rng.random_range(0.0..1.0)).collect();
    let hi: Vec<f64> = (0..dim).map(|k| a[k].max(b[k]) + rng.random_range(0.0..1.0)).collect();
    BoxD::new(lo, hi).unwrap()
}

#[test]
fn safety_oracle_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut declared = 0;
    for t in 0..1000 {
        let n = rng.random_range(2..=40);
        let raw = random_raw(&mut rng, n, t % 2 == 0, [0.05, 0.3][t % 2]);
        let inst = encode_relation(&raw).unwrap();
        for color in [Color::Red, Color::Blue] {
            let pts = inst.points(color);
            if pts.is_empty() {
                continue;
            }
            let dim = inst.relation.dim(color);
            let cell = random_box(&mut rng, pts, dim);
            if safety_test(&inst, color, &cell) {
                declared += 1;
                assert!(semantic_safe(&inst, color, &cell), "case {t}");
            }
            let single = BoxD::new(pts[0][..dim].to_vec(), pts[0][..dim].to_vec()).unwrap();
            assert!(safety_test(&inst, color, &single));
        }
    }
    assert!(declared > 0);
}

#[test]
fn crossing_box_is_unsafe() {
    // Red box straddling the crossing point of the only vertical.
    let raw = Instance::Segments(SegmentSet {
        horizontal: vec![HSeg { x0: 0.0, x1: 2.0, y: 1.0 }, HSeg { x0: 0.5, x1: 2.5, y: 3.0 }],
        vertical: vec![VSeg { x: 1.5, y0: 0.25, y1: 2.75 }],
    });
    let inst = encode_relation(&raw).unwrap();
    let cell = BoxD::new(vec![-1.0, 1.0, 0.0], vec![1.0, 3.0, 4.0]).unwrap();
    assert!(!safety_test(&inst, Color::Red, &cell));
    assert!(!semantic_safe(&inst, Color::Red, &cell));
}

#[test]
fn box_queries_match_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for dim in [2usize, 3, 4] {
        let pts: Vec<Param> = (0..300)
            .map(|_| {
                let mut p = [0.0; 4];
                for c in p.iter_mut().take(dim) {
                    *c = rng.random();
                }
                p
            })
            .collect();
        for _ in 0..1000 / 3 {
            let mut q = Range::everything(dim);
            for a in 0..dim {
                let (u, v): (f64, f64) = (rng.random(), rng.random());
                q.lo[a] = u.min(v);
                q.hi[a] = u.max(v);
            }
            if rng.random_bool(0.2) {
                q.hi[0] = f64::INFINITY;
            }
            let mut want: Vec<usize> = (0..pts.len()).filter(|&i| q.contains(&pts[i])).collect();
            let mut m = CostMeter::new();
            let mut got = kd_box_query(&pts, dim, &q, QueryMode::Report, &mut m).ids;
            got.sort_unstable();
            want.sort_unstable();
            assert_eq!(got, want);
            assert_eq!(kd_box_query(&pts, dim, &q, QueryMode::Count, &mut m).count, want.len());
            assert_eq!(kd_box_query(&pts, dim, &q, QueryMode::Empty, &mut m).count > 0, !want.is_empty());
        }
        let all = Range::everything(dim);
        assert_eq!(kd_box_query(&pts, dim, &all, QueryMode::Count, &mut CostMeter::new()).count, 300);
        let mut none = Range::everything(dim);
        none.lo[0] = 2.0;
        assert_eq!(kd_box_query(&pts, dim, &none, QueryMode::Count, &mut CostMeter::new()).count, 0);
    }
}

#[test]
fn safety_partition_is_a_partition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in 0..40 {
        let raw = random_raw(&mut rng, 40, t % 2 == 0, 0.1);
        let inst = encode_relation(&raw).unwrap();
        let part = safety_partition(&inst).unwrap();
        assert_eq!(part.n(), inst.len());
        for (block, enc) in part.subsets().iter().zip(part.enclosures()) {
            if let iogeom::entropy::Enclosure::Box(b) = enc {
                let color = if block[0] < inst.red.len() { Color::Red } else { Color::Blue };
                assert!(semantic_safe(&inst, color, b));
            }
        }
    }
}

#[test]
fn cost_within_safety_entropy_bound() {
    let fams = [Family::RangerepRandom, Family::SegintSeparated, Family::SegintCrossingGrid];
    for fam in fams {
        for n in [16usize, 64, 256, 1024] {
            for seed in 0..5 {
                let g = generate(&InstanceSpec::new(fam, n, seed).unwrap()).unwrap();
                let inst = encode_relation(&g.instance).unwrap();
                let h = safety_partition(&inst).unwrap().entropy();
                let (rep, _) = report_adaptive(&inst, &ReportConfig { seed, ..Default::default() }).unwrap();
                let bound = 16.0 * (n as f64 * (h + 1.0) + rep.k as f64);
                assert!((rep.meter.total_tests() as f64) <= bound, "{fam} n={n} seed={seed}");
            }
        }
    }
}
