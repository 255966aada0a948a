//! Comparison-model adversary for 2-d maxima.
//!
//! Every input index `p` owns a node `B_p` of the alternating-median k-d tree
//! over `S`. Comparisons are answered by pushing boxes down the tree until the
//! answer follows from the boxes alone; a point whose box reaches a leaf is
//! pinned to a still unused point of that leaf. The total depth of all boxes
//! is then a lower bound on the work any correct algorithm was forced to do.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::{KdTree2, Problem};
use crate::error::{Error, Result};
use crate::geom::{Axis, CoordCompare, CostMeter, Point2, PointSequence, PointsCompare};
use crate::maxima::{maxima2d_with, maxima_oracle, sortscan_with, OracleMethod};

/// One resolved comparison: was coordinate `axis` of `i` below that of `j`?
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub i: usize,
    pub j: usize,
    pub axis: Axis,
    pub less: bool,
}

#[derive(Clone, Debug)]
pub struct AdversaryState {
    points: Vec<Point2>,
    tree: KdTree2,
    parent: Vec<usize>,
    current: Vec<usize>,
    full_count: Vec<usize>,
    fixed: Vec<Option<usize>>,
    /// Next unassigned position in each leaf's id list.
    cursor: Vec<usize>,
    pub ordinary: u64,
    pub exceptional: u64,
    /// Descents made after the algorithm ended, to pin leftover points.
    pub finalizing: u64,
    pub depth_sum: u64,
    pub comparisons: u64,
    pub transcript: Vec<Query>,
}

impl AdversaryState {
    pub fn new(seq: &PointSequence<Point2>) -> Result<Self> {
        if !seq.general_position() {
            return Err(Error::Degenerate("adversary needs distinct coordinates".into()));
        }
        let points = seq.points().to_vec();
        let tree = KdTree2::build(&points, Problem::Maxima2d)?;
        let m = tree.nodes.len();
        let mut parent = vec![usize::MAX; m];
        for (b, node) in tree.nodes.iter().enumerate() {
            if let Some((_, _, kids)) = node.split {
                for c in kids {
                    parent[c] = b;
                }
            }
        }
        let n = points.len();
        let mut full_count = vec![0; m];
        full_count[0] = n;
        let mut st = AdversaryState {
            points,
            tree,
            parent,
            current: vec![0; n],
            full_count,
            fixed: vec![None; n],
            cursor: vec![0; m],
            ordinary: 0,
            exceptional: 0,
            finalizing: 0,
            depth_sum: 0,
            comparisons: 0,
            transcript: Vec::new(),
        };
        if st.tree.nodes[0].is_leaf() {
            for p in 0..n {
                st.pin(p);
            }
        }
        Ok(st)
    }

    pub fn len(&self) -> usize {
        self.current.len()
    }

    pub fn is_empty(&self) -> bool {
        self.current.is_empty()
    }

    pub fn tree(&self) -> &KdTree2 {
        &self.tree
    }

    /// Current node of input index `p`.
    pub fn current_box(&self, p: usize) -> usize {
        self.current[p]
    }

    pub fn full_count(&self, node: usize) -> usize {
        self.full_count[node]
    }

    pub fn fixed(&self, p: usize) -> Option<usize> {
        self.fixed[p]
    }

    fn is_full(&self, node: usize) -> bool {
        self.full_count[node] >= self.tree.nodes[node].ids.len()
    }

    fn pin(&mut self, p: usize) {
        let b = self.current[p];
        let ids = &self.tree.nodes[b].ids;
        let s = ids[self.cursor[b]];
        self.cursor[b] += 1;
        self.fixed[p] = Some(s);
    }

    /// Moves `p` into `child` of its node, or into the sibling if `child` is
    /// full. Returns whether the move was rerouted.
    fn descend(&mut self, p: usize, side: usize) -> bool {
        let b = self.current[p];
        let (_, _, kids) = self.tree.nodes[b].split.expect("descend from an internal node");
        let (c, rerouted) = if self.is_full(kids[side]) { (kids[1 - side], true) } else { (kids[side], false) };
        debug_assert!(!self.is_full(c), "both children full breaks n(B) <= |S n B|");
        self.current[p] = c;
        self.full_count[c] += 1;
        self.depth_sum += 1;
        if self.tree.nodes[c].is_leaf() {
            self.pin(p);
        }
        rerouted
    }

    fn step_any(&mut self, p: usize) {
        let b = self.current[p];
        let (_, _, kids) = self.tree.nodes[b].split.expect("internal node");
        let side = if self.is_full(kids[0]) { 1 } else { 0 };
        self.descend(p, side);
    }

    /// Range of axis values a point in node `b` (or pinned at `s`) can take.
    fn range(&self, p: usize, axis: usize) -> (f64, f64) {
        match self.fixed[p] {
            Some(s) => {
                let v = coord(&self.points[s], axis);
                (v, v)
            }
            None => {
                let bb = &self.tree.nodes[self.current[p]].bbox;
                (bb.lo()[axis], bb.hi()[axis])
            }
        }
    }

    /// Splitting key of an unpinned point's node on `axis`, if it splits there.
    fn key(&self, p: usize, axis: usize) -> Option<f64> {
        if self.fixed[p].is_some() {
            return self.fixed[p].map(|s| coord(&self.points[s], axis));
        }
        match self.tree.nodes[self.current[p]].split {
            Some((a, v, _)) if a == axis => Some(v),
            _ => None,
        }
    }

    /// Decides whether coordinate `axis` of `i` is smaller than that of `j`,
    /// committing only to what every completion of the current boxes agrees on.
    pub fn compare(&mut self, i: usize, j: usize, axis: Axis) -> Result<bool> {
        let n = self.len();
        if i == j || i >= n || j >= n {
            return Err(Error::Adversary(format!("cannot compare {i} with {j} among {n} points")));
        }
        self.comparisons += 1;
        let a = axis.index();
        let less = loop {
            let (li, hi_i) = self.range(i, a);
            let (lj, hi_j) = self.range(j, a);
            if hi_i < lj {
                break true;
            }
            if hi_j < li {
                break false;
            }
            if self.fixed[i].is_some() && self.fixed[j].is_some() {
                return Err(Error::Adversary(format!("pinned points {i} and {j} share a coordinate")));
            }
            // Boxes split on the other axis step down first.
            let mut stepped = false;
            for p in [i, j] {
                if self.fixed[p].is_none() && self.key(p, a).is_none() {
                    self.step_any(p);
                    self.ordinary += 1;
                    stepped = true;
                }
            }
            if stepped {
                continue;
            }
            let (ki, kj) = (self.key(i, a).expect("key"), self.key(j, a).expect("key"));
            // The smaller key goes left; a pinned point just stays put.
            let (low, high) = if ki <= kj { (i, j) } else { (j, i) };
            for (p, side) in [(low, 0), (high, 1)] {
                if self.fixed[p].is_none() {
                    if self.descend(p, side) {
                        self.exceptional += 1;
                    } else {
                        self.ordinary += 1;
                    }
                }
            }
        };
        self.transcript.push(Query { i, j, axis, less });
        Ok(less)
    }

    /// Pushes every unpinned point to a leaf through non-full children.
    pub fn finalize(&mut self) -> Vec<usize> {
        for p in 0..self.len() {
            while self.fixed[p].is_none() {
                self.step_any(p);
                self.finalizing += 1;
            }
        }
        self.fixed.iter().map(|s| s.expect("all pinned")).collect()
    }

    /// Checks `n(B) <= |S n B|` at every node, that pinned points are distinct
    /// members of their leaf, and the depth sum.
    pub fn check_invariants(&self) -> Result<()> {
        let nodes = &self.tree.nodes;
        let mut counted = vec![0usize; nodes.len()];
        let mut depth = 0u64;
        for &b in &self.current {
            depth += nodes[b].depth as u64;
            let mut v = b;
            while v != usize::MAX {
                counted[v] += 1;
                v = self.parent[v];
            }
        }
        if depth != self.depth_sum {
            return Err(Error::Adversary(format!("depth sum {} but boxes sum to {depth}", self.depth_sum)));
        }
        for (b, node) in nodes.iter().enumerate() {
            if counted[b] != self.full_count[b] || counted[b] > node.ids.len() {
                return Err(Error::Adversary(format!("node {b}: n(B)={} counted={} |S n B|={}", self.full_count[b], counted[b], node.ids.len())));
            }
        }
        let mut used = vec![false; self.points.len()];
        for (p, s) in self.fixed.iter().enumerate() {
            if let Some(s) = *s {
                let b = self.current[p];
                if used[s] || !nodes[b].is_leaf() || nodes[b].ids.binary_search(&s).is_err() {
                    return Err(Error::Adversary(format!("point {p} pinned to {s} outside leaf {b} or twice")));
                }
                used[s] = true;
            }
        }
        Ok(())
    }
}

fn coord(p: &Point2, axis: usize) -> f64 {
    if axis == 0 {
        p.x
    } else {
        p.y
    }
}

/// Adapter handing the adversary to an algorithm; the first error is kept and
/// later queries answer `false`.
struct AdversaryCompare<'a> {
    state: &'a mut AdversaryState,
    error: Option<Error>,
}

impl CoordCompare for AdversaryCompare<'_> {
    fn len(&self) -> usize {
        self.state.len()
    }

    fn less(&mut self, i: usize, j: usize, axis: Axis) -> bool {
        if self.error.is_some() {
            return false;
        }
        match self.state.compare(i, j, axis) {
            Ok(b) => b,
            Err(e) => {
                self.error = Some(e);
                false
            }
        }
    }
}

/// Standalone form of [`AdversaryState::compare`].
pub fn adversary_compare(state: &mut AdversaryState, i: usize, j: usize, axis: Axis) -> Result<bool> {
    state.compare(i, j, axis)
}

/// Comparison-driven maxima procedures the harness knows by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaximaProcedure {
    Maxima2d { seed: u64 },
    Sortscan,
}

impl MaximaProcedure {
    /// Runs the procedure against `cmp`; returns maximal input indices.
    pub fn run(&self, cmp: &mut dyn CoordCompare, meter: &mut CostMeter) -> Vec<usize> {
        match *self {
            MaximaProcedure::Maxima2d { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                maxima2d_with(cmp, meter, &mut rng).0
            }
            MaximaProcedure::Sortscan => sortscan_with(cmp, meter).0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdversaryReport {
    /// Comparisons the algorithm made.
    #[serde(rename = "T")]
    pub t: u64,
    /// Total depth of all boxes after finalizing.
    #[serde(rename = "D")]
    pub d: u64,
    pub ordinary: u64,
    pub exceptional: u64,
    pub finalizing: u64,
    pub h_kd: f64,
    pub c_amort: f64,
    /// `T >= D / c_amort`.
    pub amortized_ok: bool,
    /// Replaying on `sigma` gives the true maxima and every recorded answer.
    pub replay_ok: bool,
    /// Input position `p` holds point `sigma[p]` of `S`.
    pub sigma: Vec<usize>,
}

pub const DEFAULT_C_AMORT: f64 = 8.0;

/// Runs `algorithm` against the adversary over `S`, pins the leftover points,
/// and replays the algorithm on the resulting permutation.
pub fn adversary_session<F>(seq: &PointSequence<Point2>, mut algorithm: F, c_amort: f64) -> Result<AdversaryReport>
where
    F: FnMut(&mut dyn CoordCompare, &mut CostMeter) -> Vec<usize>,
{
    let mut state = AdversaryState::new(seq)?;
    let h_kd = state.tree.partition(Problem::Maxima2d).entropy();
    let mut adapter = AdversaryCompare { state: &mut state, error: None };
    let mut meter = CostMeter::new();
    algorithm(&mut adapter, &mut meter);
    if let Some(e) = adapter.error.take() {
        return Err(e);
    }
    state.check_invariants()?;
    let (ordinary, exceptional) = (state.ordinary, state.exceptional);
    let sigma = state.finalize();
    state.check_invariants()?;

    let s = seq.points();
    let arranged: Vec<Point2> = sigma.iter().map(|&k| s[k]).collect();
    let consistent = state.transcript.iter().all(|q| {
        let (a, b) = (coord(&arranged[q.i], q.axis.index()), coord(&arranged[q.j], q.axis.index()));
        (a < b) == q.less
    });
    let mut out = algorithm(&mut PointsCompare::new(&arranged), &mut CostMeter::new());
    out.sort_unstable();
    let mut truth: Vec<usize> = {
        let m = maxima_oracle(s, OracleMethod::Sortscan)?.maximal;
        let mut inv = vec![0; sigma.len()];
        for (p, &k) in sigma.iter().enumerate() {
            inv[k] = p;
        }
        m.iter().map(|&k| inv[k]).collect()
    };
    truth.sort_unstable();
    let t = state.comparisons;
    let d = state.depth_sum;
    Ok(AdversaryReport {
        t,
        d,
        ordinary,
        exceptional,
        finalizing: state.finalizing,
        h_kd,
        c_amort,
        amortized_ok: t as f64 * c_amort >= d as f64,
        replay_ok: consistent && out == truth,
        sigma,
    })
}

/// [`adversary_session`] for a named procedure.
pub fn adversary_run(seq: &PointSequence<Point2>, procedure: MaximaProcedure, c_amort: f64) -> Result<AdversaryReport> {
    adversary_session(seq, |cmp, meter| procedure.run(cmp, meter), c_amort)
}
