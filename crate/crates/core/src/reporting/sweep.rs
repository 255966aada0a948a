//! Worst-case solvers for the survivors (oracle A): an x-sweep for segment
//! intersection, a static range tree for range reporting, and Fenwick-tree
//! sweeps for per-object counts.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::relation::{Relation, RelationInstance};
use super::PairReport;
use crate::error::Result;
use crate::geom::CostMeter;
use crate::instances::{Instance, SegmentSet};

/// Active-structure key whose every comparison is charged to a counter.
struct Key<'a> {
    y: f64,
    id: usize,
    ticks: &'a Cell<u64>,
}

impl Ord for Key<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ticks.set(self.ticks.get() + 1);
        self.y.total_cmp(&other.y).then(self.id.cmp(&other.id))
    }
}

impl PartialOrd for Key<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Key<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Key<'_> {}

fn sort_counted<T>(v: &mut [T], key: impl Fn(&T) -> f64, meter: &mut CostMeter) {
    let mut c = 0u64;
    v.sort_by(|a, b| {
        c += 1;
        key(a).total_cmp(&key(b))
    });
    meter.comparisons += c;
}

#[derive(Clone, Copy)]
enum Event {
    Start(usize),
    Probe(usize),
    End(usize),
}

/// Sweep events by x: each horizontal enters and leaves, each vertical probes.
fn segment_events(inst: &RelationInstance, red: &[usize], blue: &[usize], meter: &mut CostMeter) -> Vec<(f64, Event)> {
    let mut ev: Vec<(f64, Event)> = Vec::with_capacity(2 * red.len() + blue.len());
    for &i in red {
        ev.push((inst.red[i][0], Event::Start(i)));
        ev.push((inst.red[i][1], Event::End(i)));
    }
    for &j in blue {
        ev.push((inst.blue[j][0], Event::Probe(j)));
    }
    sort_counted(&mut ev, |e| e.0, meter);
    ev
}

/// Crossing pairs among horizontals `red` and verticals `blue` by a left-to-right
/// sweep over an ordered set of active horizontals.
fn sweep_pairs(inst: &RelationInstance, red: &[usize], blue: &[usize], meter: &mut CostMeter) -> Vec<(usize, usize)> {
    let ev = segment_events(inst, red, blue, meter);
    let ticks = Cell::new(0u64);
    let mut active: BTreeMap<Key<'_>, ()> = BTreeMap::new();
    let mut out = Vec::new();
    for (_, e) in ev {
        match e {
            Event::Start(i) => {
                active.insert(Key { y: inst.red[i][2], id: i, ticks: &ticks }, ());
            }
            Event::End(i) => {
                active.remove(&Key { y: inst.red[i][2], id: i, ticks: &ticks });
            }
            Event::Probe(j) => {
                let lo = Key { y: inst.blue[j][1], id: 0, ticks: &ticks };
                let hi = Key { y: inst.blue[j][2], id: usize::MAX, ticks: &ticks };
                out.extend(active.range(lo..=hi).map(|(k, _)| (k.id, j)));
            }
        }
    }
    meter.comparisons += ticks.get();
    out
}

/// All crossing pairs `(horizontal, vertical)` of a segment set.
pub fn segint_sweep_oracle(segments: &SegmentSet) -> Result<PairReport> {
    let inst = super::encode_relation(&Instance::Segments(segments.clone()))?;
    let mut meter = CostMeter::new();
    let red: Vec<usize> = (0..inst.red.len()).collect();
    let blue: Vec<usize> = (0..inst.blue.len()).collect();
    let mut pairs = meter.timed(|m| sweep_pairs(&inst, &red, &blue, m));
    pairs.sort_unstable();
    Ok(PairReport { k: pairs.len(), pairs, meter })
}

/// Merge-sort tree over points sorted by x; every node keeps its points by y.
struct RangeTree {
    xs: Vec<f64>,
    /// Node `v` covers x-ranks `span[v]`, children `2v+1`, `2v+2`.
    by_y: Vec<Vec<(f64, usize)>>,
    span: Vec<(usize, usize)>,
}

impl RangeTree {
    fn build(pts: Vec<(f64, f64, usize)>, meter: &mut CostMeter) -> Self {
        let mut pts = pts;
        sort_counted(&mut pts, |p| p.0, meter);
        let n = pts.len();
        let size = if n == 0 { 0 } else { 4 * n };
        let mut t = RangeTree { xs: pts.iter().map(|p| p.0).collect(), by_y: vec![Vec::new(); size], span: vec![(0, 0); size] };
        if n > 0 {
            t.fill(0, 0, n, &pts, meter);
        }
        t
    }

    fn fill(&mut self, v: usize, lo: usize, hi: usize, pts: &[(f64, f64, usize)], meter: &mut CostMeter) {
        self.span[v] = (lo, hi);
        if hi - lo == 1 {
            self.by_y[v] = vec![(pts[lo].1, pts[lo].2)];
            return;
        }
        let mid = (lo + hi) / 2;
        self.fill(2 * v + 1, lo, mid, pts, meter);
        self.fill(2 * v + 2, mid, hi, pts, meter);
        let (a, b) = (&self.by_y[2 * v + 1], &self.by_y[2 * v + 2]);
        let mut merged = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            meter.comparisons += 1;
            if a[i].0 < b[j].0 {
                merged.push(a[i]);
                i += 1;
            } else {
                merged.push(b[j]);
                j += 1;
            }
        }
        merged.extend_from_slice(&a[i..]);
        merged.extend_from_slice(&b[j..]);
        self.by_y[v] = merged;
    }

    /// Ids with `x` in `[x0, x1]` and `y` in `[y0, y1]`.
    fn report(&self, x0: f64, x1: f64, y0: f64, y1: f64, meter: &mut CostMeter, out: &mut Vec<usize>) {
        if self.xs.is_empty() {
            return;
        }
        let bs = |pred: &dyn Fn(f64) -> bool, v: &[f64], meter: &mut CostMeter| {
            meter.comparisons += (usize::BITS - v.len().leading_zeros()) as u64 + 1;
            v.partition_point(|&x| pred(x))
        };
        let l = bs(&|x| x < x0, &self.xs, meter);
        let r = bs(&|x| x <= x1, &self.xs, meter);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let (lo, hi) = self.span[v];
            if hi <= l || lo >= r {
                continue;
            }
            if l <= lo && hi <= r {
                let ys = &self.by_y[v];
                let depth = (usize::BITS - ys.len().leading_zeros()) as u64 + 1;
                meter.comparisons += 2 * depth;
                let a = ys.partition_point(|p| p.0 < y0);
                let b = ys.partition_point(|p| p.0 <= y1);
                out.extend(ys[a..b].iter().map(|p| p.1));
                continue;
            }
            stack.push(2 * v + 2);
            stack.push(2 * v + 1);
        }
    }
}

fn range_pairs(inst: &RelationInstance, red: &[usize], blue: &[usize], meter: &mut CostMeter) -> Vec<(usize, usize)> {
    let tree = RangeTree::build(red.iter().map(|&i| (inst.red[i][0], inst.red[i][1], i)).collect(), meter);
    let mut out = Vec::new();
    let mut hits = Vec::new();
    for &j in blue {
        let q = inst.blue[j];
        hits.clear();
        tree.report(q[0], q[1], q[2], q[3], meter, &mut hits);
        out.extend(hits.iter().map(|&i| (i, j)));
    }
    out
}

/// Interacting pairs among the given red and blue ids.
pub fn direct_pairs(inst: &RelationInstance, red: &[usize], blue: &[usize], meter: &mut CostMeter) -> Vec<(usize, usize)> {
    match inst.relation {
        Relation::Segint => sweep_pairs(inst, red, blue, meter),
        Relation::Rangerep => range_pairs(inst, red, blue, meter),
    }
}

/// Fenwick tree; every step is charged as one comparison.
struct Fenwick {
    t: Vec<i64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick { t: vec![0; n + 1] }
    }

    fn add(&mut self, i: usize, v: i64, meter: &mut CostMeter) {
        let mut i = i + 1;
        while i < self.t.len() {
            self.t[i] += v;
            i += i & i.wrapping_neg();
            meter.comparisons += 1;
        }
    }

    /// Sum over `0..i`.
    fn prefix(&self, i: usize, meter: &mut CostMeter) -> i64 {
        let mut i = i;
        let mut s = 0;
        while i > 0 {
            s += self.t[i];
            i -= i & i.wrapping_neg();
            meter.comparisons += 1;
        }
        s
    }

    fn range_sum(&self, a: usize, b: usize, meter: &mut CostMeter) -> i64 {
        self.prefix(b + 1, meter) - self.prefix(a, meter)
    }

    /// Adds `v` on `a..=b`, read back with [`Fenwick::prefix`] at `i + 1`.
    fn range_add(&mut self, a: usize, b: usize, v: i64, meter: &mut CostMeter) {
        self.add(a, v, meter);
        self.add(b + 1, -v, meter);
    }
}

/// Ranks of y values: sorted with counted comparisons, looked up by position.
fn y_ranks(values: &[f64], meter: &mut CostMeter) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    sort_counted(&mut order, |&k| values[k], meter);
    let mut rank = vec![0; values.len()];
    for (r, &k) in order.iter().enumerate() {
        rank[k] = r;
    }
    rank
}

/// Per-object interaction counts among the given ids, aligned with `red` and `blue`.
pub fn direct_counts(inst: &RelationInstance, red: &[usize], blue: &[usize], meter: &mut CostMeter) -> (Vec<u64>, Vec<u64>) {
    let (nr, nb) = (red.len(), blue.len());
    let mut rc = vec![0i64; nr];
    let mut bc = vec![0i64; nb];
    match inst.relation {
        Relation::Segint => {
            // y values: horizontal y, then vertical eta, eta'.
            let mut ys: Vec<f64> = red.iter().map(|&i| inst.red[i][2]).collect();
            for &j in blue {
                ys.push(inst.blue[j][1]);
                ys.push(inst.blue[j][2]);
            }
            let rank = y_ranks(&ys, meter);
            let hr = |a: usize| rank[a];
            let vr = |b: usize| (rank[nr + 2 * b], rank[nr + 2 * b + 1]);
            let mut ev: Vec<(f64, Event)> = Vec::with_capacity(2 * nr + nb);
            for (a, &i) in red.iter().enumerate() {
                ev.push((inst.red[i][0], Event::Start(a)));
                ev.push((inst.red[i][1], Event::End(a)));
            }
            for (b, &j) in blue.iter().enumerate() {
                ev.push((inst.blue[j][0], Event::Probe(b)));
            }
            sort_counted(&mut ev, |e| e.0, meter);
            let mut horiz = Fenwick::new(ys.len());
            let mut vert = Fenwick::new(ys.len() + 1);
            for (_, e) in ev {
                match e {
                    Event::Start(a) => {
                        horiz.add(hr(a), 1, meter);
                        rc[a] -= vert.prefix(hr(a) + 1, meter);
                    }
                    Event::End(a) => {
                        horiz.add(hr(a), -1, meter);
                        rc[a] += vert.prefix(hr(a) + 1, meter);
                    }
                    Event::Probe(b) => {
                        let (lo, hi) = vr(b);
                        bc[b] = horiz.range_sum(lo, hi, meter);
                        vert.range_add(lo, hi, 1, meter);
                    }
                }
            }
        }
        Relation::Rangerep => {
            let mut ys: Vec<f64> = red.iter().map(|&i| inst.red[i][1]).collect();
            for &j in blue {
                ys.push(inst.blue[j][2]);
                ys.push(inst.blue[j][3]);
            }
            let rank = y_ranks(&ys, meter);
            let rr = |b: usize| (rank[nr + 2 * b], rank[nr + 2 * b + 1]);
            // Start = left side of a rectangle, End = right side, Probe = point.
            let mut ev: Vec<(f64, Event)> = Vec::with_capacity(nr + 2 * nb);
            for (a, &i) in red.iter().enumerate() {
                ev.push((inst.red[i][0], Event::Probe(a)));
            }
            for (b, &j) in blue.iter().enumerate() {
                ev.push((inst.blue[j][0], Event::Start(b)));
                ev.push((inst.blue[j][1], Event::End(b)));
            }
            sort_counted(&mut ev, |e| e.0, meter);
            let mut pts = Fenwick::new(ys.len());
            let mut rects = Fenwick::new(ys.len() + 1);
            for (_, e) in ev {
                match e {
                    Event::Probe(a) => {
                        pts.add(rank[a], 1, meter);
                        rc[a] = rects.prefix(rank[a] + 1, meter);
                    }
                    Event::Start(b) => {
                        let (lo, hi) = rr(b);
                        bc[b] -= pts.range_sum(lo, hi, meter);
                        rects.range_add(lo, hi, 1, meter);
                    }
                    Event::End(b) => {
                        let (lo, hi) = rr(b);
                        bc[b] += pts.range_sum(lo, hi, meter);
                        rects.range_add(lo, hi, -1, meter);
                    }
                }
            }
        }
    }
    let cast = |v: Vec<i64>| v.into_iter().map(|c| u64::try_from(c).expect("counts are nonnegative")).collect();
    (cast(rc), cast(bc))
}
