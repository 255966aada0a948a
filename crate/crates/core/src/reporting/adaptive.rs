//! The round-based reporting and counting framework: partition one color
//! into cells, settle each safe cell with one query, prune it, swap colors,
//! and hand the survivors to a worst-case solver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::kdtree::{Canonical, Grouped, KdIndex, QueryMode};
use super::relation::{Color, Param, Range, RelationInstance};
use super::sweep::{direct_counts, direct_pairs};
use super::PairReport;
use crate::entropy::{Enclosure, Problem, RespectfulPartition};
use crate::error::Result;
use crate::geom::{select_kth, BoxD, CostMeter};
use crate::hull3d::round_sizes;
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    /// Rounds `j = 0..=floor(log2(delta * log2 n))` with `2^(2^j)` cells.
    pub delta: f64,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig { delta: 0.25, seed: 0, exec: Execution::Sequential }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseStat {
    pub round: usize,
    pub color: Color,
    pub cells: usize,
    pub before: usize,
    pub pruned: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMode {
    Total,
    Individual,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub total: u64,
    /// Per-red and per-blue interaction counts in `Individual` mode.
    pub red: Option<Vec<u64>>,
    pub blue: Option<Vec<u64>>,
    pub meter: CostMeter,
    pub phases: Vec<PhaseStat>,
}

/// What a safe cell learns about its representative's partners.
enum Partners {
    Ids(Vec<usize>),
    Count(usize),
    Canonical(Vec<Canonical>, usize),
}

#[derive(Clone, Copy, PartialEq)]
enum Goal {
    Report,
    Total,
    Individual,
}

/// Splits `ids` into exactly `r` groups by cyclic-axis median-proportional cuts.
fn split_cells(points: &[Param], ids: &mut [usize], dim: usize, r: usize, depth: usize, rng: &mut ChaCha8Rng, meter: &mut CostMeter, out: &mut Vec<Vec<usize>>) {
    if r == 1 {
        out.push(ids.to_vec());
        return;
    }
    let (r1, r2) = (r.div_ceil(2), r / 2);
    let m = ids.len();
    let k = ((m * r1 + r / 2) / r).clamp(r1, m - r2);
    let axis = depth % dim;
    select_kth(ids, k - 1, |&a, &b| points[a][axis] < points[b][axis], meter, rng).expect("rank in range");
    let (lo, hi) = ids.split_at_mut(k);
    split_cells(points, lo, dim, r1, depth + 1, rng, meter, out);
    split_cells(points, hi, dim, r2, depth + 1, rng, meter, out);
}

fn bounding(points: &[Param], ids: &[usize], dim: usize, meter: &mut CostMeter) -> Range {
    let mut r = Range { dim, lo: [f64::INFINITY; 4], hi: [f64::NEG_INFINITY; 4] };
    for &i in ids {
        for a in 0..dim {
            r.lo[a] = r.lo[a].min(points[i][a]);
            r.hi[a] = r.hi[a].max(points[i][a]);
        }
    }
    meter.comparisons += (2 * dim * ids.len()) as u64;
    r
}

/// Oracle C on a cell: no opposite point's interaction range meets the cell
/// without containing it. Two counting queries decide it.
fn grouped_safe(inst: &RelationInstance, color: Color, cell: &Range, groups: &Grouped, meter: &mut CostMeter) -> bool {
    let opp = inst.points(color.other());
    let (meets, holds) = inst.crossing_ranges(color, cell);
    let a = groups.query(opp, &meets, QueryMode::Count, meter).count;
    a == 0 || a == groups.query(opp, &holds, QueryMode::Count, meter).count
}

/// Whether every point of `color` in `cell` interacts with the same opposite
/// points, by testing the cell against all opposite points' ranges.
pub fn safety_test(inst: &RelationInstance, color: Color, cell: &BoxD) -> bool {
    let opp = inst.points(color.other());
    let ids: Vec<usize> = (0..opp.len()).collect();
    let mut meter = CostMeter::new();
    let tree = Grouped { groups: vec![KdIndex::build(opp, &ids, inst.relation.dim(color.other()), 0, &mut meter)] };
    grouped_safe(inst, color, &Range::from_box(cell), &tree, &mut meter)
}

struct State {
    alive: [Vec<usize>; 2],
    pairs: Vec<(usize, usize)>,
    total: u64,
    counts: [Vec<u64>; 2],
    phases: Vec<PhaseStat>,
}

fn slot(c: Color) -> usize {
    match c {
        Color::Red => 0,
        Color::Blue => 1,
    }
}

fn run(inst: &RelationInstance, cfg: &ReportConfig, goal: Goal, meter: &mut CostMeter) -> State {
    let n = inst.len();
    let mut st = State {
        alive: [(0..inst.red.len()).collect(), (0..inst.blue.len()).collect()],
        pairs: Vec::new(),
        total: 0,
        counts: [vec![0; inst.red.len()], vec![0; inst.blue.len()]],
        phases: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (round, r) in round_sizes(n, cfg.delta, 1.0).into_iter().enumerate() {
        for color in [Color::Red, Color::Blue] {
            phase(inst, cfg, goal, round, r, color, &mut rng, &mut st, meter);
        }
    }
    let (red, blue) = (&st.alive[0], &st.alive[1]);
    match goal {
        Goal::Report => {
            let p = direct_pairs(inst, red, blue, meter);
            st.pairs.extend(p);
        }
        Goal::Total | Goal::Individual => {
            let (rc, bc) = direct_counts(inst, red, blue, meter);
            st.total += rc.iter().sum::<u64>();
            for (k, &i) in red.iter().enumerate() {
                st.counts[0][i] += rc[k];
            }
            for (k, &j) in blue.iter().enumerate() {
                st.counts[1][j] += bc[k];
            }
        }
    }
    st
}

#[allow(clippy::too_many_arguments)]
fn phase(
    inst: &RelationInstance,
    cfg: &ReportConfig,
    goal: Goal,
    round: usize,
    r: usize,
    color: Color,
    rng: &mut ChaCha8Rng,
    st: &mut State,
    meter: &mut CostMeter,
) {
    let (c, o) = (slot(color), slot(color.other()));
    let before = st.alive[c].len();
    if before == 0 {
        return;
    }
    let r = r.min(before);
    let pts = inst.points(color);
    let opp = inst.points(color.other());
    let dim = inst.relation.dim(color);
    let odim = inst.relation.dim(color.other());
    let mut work = st.alive[c].clone();
    let mut cells = Vec::with_capacity(r);
    let mut split_rng = ChaCha8Rng::seed_from_u64(rng.random());
    split_cells(pts, &mut work, dim, r, 0, &mut split_rng, meter, &mut cells);
    // Groups of r^d points make each query cost about |Q| / r.
    let m = (r as u64).saturating_pow(odim as u32).min(st.alive[o].len().max(1) as u64) as usize;
    let groups = Grouped::build(opp, &st.alive[o], odim, m, rng.random(), cfg.exec, meter);
    let outcomes = par::map(cfg.exec, &cells, |cell| {
        let mut local = CostMeter::new();
        let bbox = bounding(pts, cell, dim, &mut local);
        if !grouped_safe(inst, color, &bbox, &groups, &mut local) {
            return (None, local);
        }
        let rep = *cell.iter().min().expect("cells are nonempty");
        let q = inst.range_of(color, rep);
        let partners = match goal {
            Goal::Report => Partners::Ids(groups.query(opp, &q, QueryMode::Report, &mut local).ids),
            Goal::Total => Partners::Count(groups.query(opp, &q, QueryMode::Count, &mut local).count),
            Goal::Individual => {
                let parts: Vec<Canonical> = groups.groups.iter().map(|g| g.canonical(opp, &q, &mut local)).collect();
                let k = parts
                    .iter()
                    .zip(&groups.groups)
                    .map(|(p, g)| p.points.len() + p.nodes.iter().map(|&v| g.node_size(v)).sum::<usize>())
                    .sum();
                Partners::Canonical(parts, k)
            }
        };
        (Some(partners), local)
    });
    let mut node_amounts: Vec<Vec<u64>> = match goal {
        Goal::Individual => groups.groups.iter().map(|g| vec![0; g.node_count()]).collect(),
        _ => Vec::new(),
    };
    let mut keep = Vec::with_capacity(before);
    for (cell, (partners, local)) in cells.iter().zip(outcomes) {
        *meter += local;
        let Some(partners) = partners else {
            keep.extend_from_slice(cell);
            continue;
        };
        let q = cell.len() as u64;
        match partners {
            Partners::Ids(z) => {
                for &i in cell {
                    for &j in &z {
                        st.pairs.push(if color == Color::Red { (i, j) } else { (j, i) });
                    }
                }
            }
            Partners::Count(k) => st.total += q * k as u64,
            Partners::Canonical(parts, k) => {
                st.total += q * k as u64;
                for &i in cell {
                    st.counts[c][i] += k as u64;
                }
                for (g, p) in parts.iter().enumerate() {
                    for &v in &p.nodes {
                        node_amounts[g][v] += q;
                    }
                    for &j in &p.points {
                        st.counts[o][j] += q;
                    }
                }
            }
        }
    }
    for (g, amounts) in node_amounts.iter_mut().enumerate() {
        groups.groups[g].flush(amounts, &mut st.counts[o]);
    }
    st.phases.push(PhaseStat { round, color, cells: cells.len(), before, pruned: before - keep.len() });
    keep.sort_unstable();
    st.alive[c] = keep;
}

/// All interacting pairs `(red, blue)`, sorted.
pub fn report_adaptive(inst: &RelationInstance, cfg: &ReportConfig) -> Result<(PairReport, Vec<PhaseStat>)> {
    let mut meter = CostMeter::new();
    let mut st = meter.timed(|m| run(inst, cfg, Goal::Report, m));
    st.pairs.sort_unstable();
    Ok((PairReport { k: st.pairs.len(), pairs: st.pairs, meter }, st.phases))
}

/// Total or per-object interaction counts without listing pairs.
pub fn count_adaptive(inst: &RelationInstance, mode: CountMode, cfg: &ReportConfig) -> Result<Counts> {
    let mut meter = CostMeter::new();
    let goal = match mode {
        CountMode::Total => Goal::Total,
        CountMode::Individual => Goal::Individual,
    };
    let st = meter.timed(|m| run(inst, cfg, goal, m));
    let [red, blue] = st.counts;
    let individual = mode == CountMode::Individual;
    Ok(Counts {
        total: st.total,
        red: individual.then_some(red),
        blue: individual.then_some(blue),
        meter,
        phases: st.phases,
    })
}

/// Leaf boxes of a per-color k-d tree, stopped at safe boxes or single
/// points. Red ids keep their index; blue ids are shifted by the red count.
pub fn safety_partition(inst: &RelationInstance) -> Result<RespectfulPartition> {
    let mut blocks = Vec::new();
    let mut encl = Vec::new();
    let mut meter = CostMeter::new();
    for color in [Color::Red, Color::Blue] {
        let pts = inst.points(color);
        let opp = inst.points(color.other());
        let all: Vec<usize> = (0..opp.len()).collect();
        let tree = Grouped { groups: vec![KdIndex::build(opp, &all, inst.relation.dim(color.other()), 0, &mut meter)] };
        let dim = inst.relation.dim(color);
        let shift = if color == Color::Red { 0 } else { inst.red.len() };
        let mut stack: Vec<(Vec<usize>, usize)> = if pts.is_empty() { Vec::new() } else { vec![((0..pts.len()).collect(), 0)] };
        while let Some((mut ids, depth)) = stack.pop() {
            let bbox = bounding(pts, &ids, dim, &mut meter);
            if ids.len() == 1 {
                blocks.push(vec![ids[0] + shift]);
                encl.push(Enclosure::Singleton);
                continue;
            }
            if grouped_safe(inst, color, &bbox, &tree, &mut meter) {
                encl.push(Enclosure::Box(BoxD::new(bbox.lo[..dim].to_vec(), bbox.hi[..dim].to_vec())?));
                blocks.push(ids.iter().map(|&i| i + shift).collect());
                continue;
            }
            let axis = depth % dim;
            let k = ids.len().div_ceil(2);
            ids.select_nth_unstable_by(k - 1, |&a, &b| pts[a][axis].total_cmp(&pts[b][axis]));
            let hi = ids.split_off(k);
            stack.push((hi, depth + 1));
            stack.push((ids, depth + 1));
        }
    }
    RespectfulPartition::new(inst.len(), blocks, encl, Problem::RelationSafe)
}
