mod common;

use common::{p, seq, staircase_fixture};
use iogeom::entropy::{
    entropy_report, f_measure, f_sets, is_respectful2, kd_respectful_partition, partition_entropy,
    structural_entropy_bruteforce, vertical_partition, Enclosure, KdTree2, Problem, RespectfulPartition,
};
use iogeom::geom::{BoxD, Point2};
use iogeom::instances::{generate, Family, InstanceSpec};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Independent entropy: `log2 n - (1/n) sum s log2 s`.
fn entropy_oracle(sizes: &[usize]) -> f64 {
    let n: usize = sizes.iter().sum();
    let n = n as f64;
    n.log2() - sizes.iter().map(|&s| s as f64 * (s as f64).log2()).sum::<f64>() / n
}

fn bbox(points: &[Point2], ids: &[usize]) -> Enclosure {
    let c: Vec<[f64; 2]> = ids.iter().map(|&i| [points[i].x, points[i].y]).collect();
    Enclosure::Box(BoxD::bounding(c.iter().map(|v| &v[..])).unwrap())
}

#[test]
fn entropy_of_figure_sizes() {
    assert!(close(partition_entropy(&[1, 7, 4]), 1.281, 1e-3));
    assert!(close(partition_entropy(&[4, 4, 4]), 3f64.log2(), 1e-12));
    assert_eq!(partition_entropy(&[9]), 0.0);
    for sizes in [vec![1, 2, 3], vec![5, 5, 1, 1], vec![10, 1]] {
        assert!(close(partition_entropy(&sizes), entropy_oracle(&sizes), 1e-12));
    }
}

#[test]
fn three_block_partition_is_respectful() {
    let pts = staircase_fixture();
    let blocks = vec![vec![0], vec![1, 3, 4, 5, 6, 7, 8], vec![2, 9, 10, 11]];
    let enc = vec![Enclosure::Singleton, bbox(&pts, &blocks[1]), bbox(&pts, &blocks[2])];
    let part = RespectfulPartition::new(12, blocks, enc, Problem::Maxima2d).unwrap();
    assert!(is_respectful2(&part, &pts).unwrap());
    assert!(close(part.entropy(), 1.281, 1e-3));
}

#[test]
fn box_holding_a_maximal_point_above_the_others_is_not_respectful() {
    let pts = staircase_fixture();
    // q1 together with p4: the box reaches (5, 12), which nothing dominates.
    let mut blocks = vec![vec![0, 6]];
    blocks.extend((1..12).filter(|&i| i != 6).map(|i| vec![i]));
    let mut enc = vec![bbox(&pts, &[0, 6])];
    enc.extend(std::iter::repeat_n(Enclosure::Singleton, 10));
    let part = RespectfulPartition::new(12, blocks, enc, Problem::Maxima2d).unwrap();
    assert!(!is_respectful2(&part, &pts).unwrap());
}

#[test]
fn point_outside_its_box_is_an_error() {
    let pts = staircase_fixture();
    let mut blocks = vec![vec![3, 4]];
    blocks.extend((0..12).filter(|&i| i != 3 && i != 4).map(|i| vec![i]));
    let mut enc = vec![bbox(&pts, &[3, 5])];
    enc.extend(std::iter::repeat_n(Enclosure::Singleton, 10));
    let part = RespectfulPartition::new(12, blocks.clone(), enc, Problem::Maxima2d).unwrap();
    // The box of p1, p3 contains p2 too, so this one is fine ...
    assert!(is_respectful2(&part, &pts).unwrap());
    let mut enc = vec![bbox(&pts, &[3, 3])];
    enc.extend(std::iter::repeat_n(Enclosure::Singleton, 10));
    let part = RespectfulPartition::new(12, blocks, enc, Problem::Maxima2d).unwrap();
    // ... but a box around p1 alone does not hold p2.
    assert!(is_respectful2(&part, &pts).is_err());
}

#[test]
fn singletons_are_respectful() {
    let pts = staircase_fixture();
    let part = RespectfulPartition::singletons(12, Problem::Maxima2d);
    assert!(is_respectful2(&part, &pts).unwrap());
    assert!(close(part.entropy(), 12f64.log2(), 1e-12));
}

#[test]
fn vertical_partition_of_fixture() {
    let s = seq(staircase_fixture());
    let v = vertical_partition(&s, Problem::Maxima2d).unwrap();
    assert_eq!(v.sizes(), vec![4, 4, 4]);
    assert!(close(v.entropy(), 3f64.log2(), 1e-3));
    assert!(is_respectful2(&v, s.points()).unwrap());
}

#[test]
fn vertical_partition_of_staircase_is_all_singletons() {
    let s = seq((0..8).map(|i| p(i as f64, 8.0 - i as f64)).collect());
    let v = vertical_partition(&s, Problem::Maxima2d).unwrap();
    assert_eq!(v.sizes(), vec![1; 8]);
    assert!(close(v.entropy(), 3.0, 1e-12));
}

#[test]
fn vertical_hull_partition_is_respectful_and_bounded() {
    for seed in 0..10 {
        for family in [Family::Hull2dEasy, Family::UniformDisk, Family::Clustered { k: 4 }] {
            let g = generate(&InstanceSpec::new(family, 300, seed).unwrap()).unwrap();
            let s = g.instance.points2().unwrap();
            let v = vertical_partition(s, Problem::Upperhull2d).unwrap();
            assert!(is_respectful2(&v, s.points()).unwrap());
            let h = v.subsets().len() as f64;
            assert!(v.entropy() <= h.log2() + 1e-9);
            if family == Family::Hull2dEasy {
                assert!(v.entropy() <= 3f64.log2() + 1e-9);
            }
        }
    }
}

#[test]
fn kd_tree_of_fixture() {
    let pts = staircase_fixture();
    let t = KdTree2::build(&pts, Problem::Maxima2d).unwrap();
    let root = &t.nodes[0];
    let (axis, value, [l, r]) = root.split.unwrap();
    assert_eq!(axis, 0);
    assert_eq!(value, 6.5);
    for child in [l, r] {
        let (axis, _, [bottom, _]) = t.nodes[child].split.unwrap();
        assert_eq!(axis, 1);
        assert!(t.nodes[bottom].is_leaf());
        assert_eq!(t.nodes[bottom].ids.len(), 3);
    }
    for leaf in t.leaves() {
        assert!(leaf.ids.len() >= 12 >> leaf.depth);
    }
    let part = kd_respectful_partition(&seq(pts.clone()), Problem::Maxima2d).unwrap();
    assert!(is_respectful2(&part, &pts).unwrap());
}

#[test]
fn kd_partition_edge_cases() {
    let one = kd_respectful_partition(&seq(vec![p(0.0, 0.0)]), Problem::Maxima2d).unwrap();
    assert_eq!(one.entropy(), 0.0);
    for k in 3..8 {
        let n = 1usize << k;
        let g = generate(&InstanceSpec::new(Family::MaximaHard, n, k as u64).unwrap()).unwrap();
        let part = kd_respectful_partition(g.instance.points2().unwrap(), Problem::Maxima2d).unwrap();
        assert_eq!(part.sizes(), vec![1; n]);
        assert!(close(part.entropy(), k as f64, 1e-9));
    }
}

#[test]
fn f_measure_of_fixture() {
    let pts = staircase_fixture();
    assert_eq!(f_sets(&pts), vec![7, 7, 4, 12, 12, 12, 7, 7, 7, 4, 4, 4]);
    let want = 3.0 * (12f64 / 12.0).log2() + 5.0 * (12f64 / 7.0).log2() + 4.0 * (12f64 / 4.0).log2();
    assert!(close(f_measure(&pts), want, 1e-9));
    assert!(close(want, 10.228, 1e-3));
}

/// Slab counts by direct definition: quadratic scans, no staircase structure.
fn f_sets_oracle(pts: &[Point2]) -> Vec<usize> {
    let dom = |a: &Point2, b: &Point2| a.x > b.x && a.y > b.y;
    let mut q: Vec<&Point2> = pts.iter().filter(|a| !pts.iter().any(|b| dom(b, a))).collect();
    q.sort_by(|a, b| a.x.total_cmp(&b.x));
    pts.iter()
        .map(|a| {
            let run: Vec<usize> = (0..q.len()).filter(|&i| std::ptr::eq(q[i], a) || dom(q[i], a)).collect();
            let (i, l) = (run[0], *run.last().unwrap());
            let lo = if i == 0 { f64::NEG_INFINITY } else { q[i - 1].x };
            let hi = if l + 1 == q.len() { f64::INFINITY } else { q[l + 1].x };
            pts.iter().filter(|b| b.x > lo && b.x < hi).count()
        })
        .collect()
}

#[test]
fn f_sets_match_direct_definition() {
    for seed in 0..40 {
        let family = [Family::UniformSquare, Family::MaximaEasy { h: 5 }, Family::Clustered { k: 3 }][seed as usize % 3];
        let g = generate(&InstanceSpec::new(family, 60, seed).unwrap()).unwrap();
        let pts = g.instance.points2().unwrap().points();
        assert_eq!(f_sets(pts), f_sets_oracle(pts));
    }
}

#[test]
fn brute_force_small_cases() {
    assert_eq!(structural_entropy_bruteforce(&[p(0.0, 0.0)], Problem::Maxima2d).unwrap(), 0.0);
    let stairs: Vec<Point2> = (0..4).map(|i| p(i as f64, 4.0 - i as f64)).collect();
    assert!(close(structural_entropy_bruteforce(&stairs, Problem::Maxima2d).unwrap(), 2.0, 1e-12));
    // One maximal point dominating the seven others: a single box suffices.
    let g = generate(&InstanceSpec::new(Family::MaximaEasy { h: 1 }, 8, 3).unwrap()).unwrap();
    let pts = g.instance.points2().unwrap().points();
    assert_eq!(structural_entropy_bruteforce(pts, Problem::Maxima2d).unwrap(), 0.0);
    let many: Vec<Point2> = (0..13).map(|i| p(i as f64, -(i as f64))).collect();
    assert!(structural_entropy_bruteforce(&many, Problem::Maxima2d).is_err());
}

#[test]
fn brute_force_fixture_is_optimal() {
    let pts = staircase_fixture();
    let h = structural_entropy_bruteforce(&pts, Problem::Maxima2d).unwrap();
    // The 1/7/4 partition is one candidate; no single box is respectful.
    assert!(h <= partition_entropy(&[1, 7, 4]) + 1e-12);
    assert!(h > 0.0);
}

#[test]
fn partitions_never_beat_brute_force() {
    for seed in 0..60 {
        let n = 4 + (seed as usize % 9);
        let family = [Family::UniformSquare, Family::MaximaEasy { h: 2 }, Family::Hull2dEasy, Family::UniformDisk][seed as usize % 4];
        let g = generate(&InstanceSpec::new(family, n, seed).unwrap()).unwrap();
        let s = g.instance.points2().unwrap();
        for problem in [Problem::Maxima2d, Problem::Upperhull2d] {
            let h = structural_entropy_bruteforce(s.points(), problem).unwrap();
            assert!(h <= (n as f64).log2() + 1e-12);
            for part in [vertical_partition(s, problem).unwrap(), kd_respectful_partition(s, problem).unwrap()] {
                assert!(is_respectful2(&part, s.points()).unwrap());
                assert!(part.entropy() >= h - 1e-12);
            }
            if problem == Problem::Maxima2d {
                let kd = kd_respectful_partition(s, problem).unwrap().entropy();
                assert!(kd <= 4.0 * (h + 1.0));
            }
        }
    }
}

#[test]
fn report_fields_are_consistent() {
    let s = seq(staircase_fixture());
    let r = entropy_report(&s, Problem::Maxima2d, None).unwrap();
    assert_eq!(r.n, 12);
    assert_eq!(r.h_output, 3);
    assert!(r.h_partition <= r.h_vert.min(r.h_kd) + 1e-12);
    assert!(r.h_partition <= 12f64.log2());
    let json = serde_json::to_value(&r).unwrap();
    for key in ["h_partition", "h_vert", "h_kd", "f_measure_bits", "n", "h_output"] {
        assert!(json.get(key).is_some(), "{key}");
    }
}
