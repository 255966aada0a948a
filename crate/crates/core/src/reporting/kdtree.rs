//! Static k-d trees over parameter points with box queries (oracle B), and the
//! grouping trick that trades query time for cheaper preprocessing.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::relation::{Param, Range};
use crate::geom::{select_kth, CostMeter};
use crate::par::{self, Execution};

const LEAF: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryMode {
    Empty,
    Report,
    Count,
}

/// Answer to a box query.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryResult {
    pub count: usize,
    /// Reported ids, when asked for.
    pub ids: Vec<usize>,
}

enum Hit {
    Node(usize),
    Point(usize),
}

#[derive(Clone, Debug)]
struct Node {
    lo: Param,
    hi: Param,
    start: usize,
    end: usize,
    kids: Option<[usize; 2]>,
}

/// A k-d tree over `points[ids]`; node 0 is the root and children follow
/// their parents.
#[derive(Clone, Debug)]
pub struct KdIndex {
    dim: usize,
    ids: Vec<usize>,
    nodes: Vec<Node>,
}

/// Canonical pieces of a query answer: whole subtrees and loose points.
#[derive(Clone, Debug, Default)]
pub struct Canonical {
    pub nodes: Vec<usize>,
    pub points: Vec<usize>,
}

impl KdIndex {
    pub fn build(points: &[Param], ids: &[usize], dim: usize, seed: u64, meter: &mut CostMeter) -> Self {
        let mut t = KdIndex { dim, ids: ids.to_vec(), nodes: Vec::new() };
        if !ids.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            t.grow(points, 0, ids.len(), 0, &mut rng, meter);
        }
        t
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn grow(&mut self, points: &[Param], start: usize, end: usize, depth: usize, rng: &mut ChaCha8Rng, meter: &mut CostMeter) -> usize {
        let me = self.nodes.len();
        self.nodes.push(Node { lo: [0.0; 4], hi: [0.0; 4], start, end, kids: None });
        let d = self.dim;
        if end - start <= LEAF {
            let (mut lo, mut hi) = ([f64::INFINITY; 4], [f64::NEG_INFINITY; 4]);
            for &i in &self.ids[start..end] {
                for a in 0..d {
                    lo[a] = lo[a].min(points[i][a]);
                    hi[a] = hi[a].max(points[i][a]);
                }
            }
            meter.comparisons += (2 * d * (end - start)) as u64;
            self.nodes[me].lo = lo;
            self.nodes[me].hi = hi;
            return me;
        }
        let axis = depth % d;
        let k = (end - start).div_ceil(2);
        select_kth(&mut self.ids[start..end], k - 1, |&a, &b| points[a][axis] < points[b][axis], meter, rng)
            .expect("rank in range");
        let l = self.grow(points, start, start + k, depth + 1, rng, meter);
        let r = self.grow(points, start + k, end, depth + 1, rng, meter);
        let (mut lo, mut hi) = (self.nodes[l].lo, self.nodes[l].hi);
        for a in 0..d {
            lo[a] = lo[a].min(self.nodes[r].lo[a]);
            hi[a] = hi[a].max(self.nodes[r].hi[a]);
        }
        meter.comparisons += (2 * d) as u64;
        self.nodes[me].lo = lo;
        self.nodes[me].hi = hi;
        self.nodes[me].kids = Some([l, r]);
        me
    }

    /// Visits the tree against `q`, reporting fully covered subtrees and the
    /// covered points of partially covered leaves; stops once `hit` says so.
    fn walk(&self, points: &[Param], q: &Range, meter: &mut CostMeter, hit: &mut dyn FnMut(Hit) -> bool) {
        if self.nodes.is_empty() {
            return;
        }
        let d = self.dim;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let n = &self.nodes[v];
            meter.comparisons += (2 * d) as u64;
            if (0..d).any(|a| n.hi[a] < q.lo[a] || n.lo[a] > q.hi[a]) {
                continue;
            }
            meter.comparisons += (2 * d) as u64;
            if (0..d).all(|a| q.lo[a] <= n.lo[a] && n.hi[a] <= q.hi[a]) {
                if hit(Hit::Node(v)) {
                    return;
                }
                continue;
            }
            match n.kids {
                Some([l, r]) => {
                    stack.push(r);
                    stack.push(l);
                }
                None => {
                    for &i in &self.ids[n.start..n.end] {
                        meter.comparisons += (2 * d) as u64;
                        if q.contains(&points[i]) && hit(Hit::Point(i)) {
                            return;
                        }
                    }
                }
            }
        }
    }

    pub fn query(&self, points: &[Param], q: &Range, mode: QueryMode, meter: &mut CostMeter) -> QueryResult {
        let mut out = QueryResult::default();
        self.walk(points, q, meter, &mut |h| {
            match h {
                Hit::Node(v) => {
                    let n = &self.nodes[v];
                    out.count += n.end - n.start;
                    if mode == QueryMode::Report {
                        out.ids.extend_from_slice(&self.ids[n.start..n.end]);
                    }
                }
                Hit::Point(i) => {
                    out.count += 1;
                    if mode == QueryMode::Report {
                        out.ids.push(i);
                    }
                }
            }
            mode == QueryMode::Empty
        });
        out
    }

    /// Canonical decomposition of the points in `q`.
    pub fn canonical(&self, points: &[Param], q: &Range, meter: &mut CostMeter) -> Canonical {
        let mut out = Canonical::default();
        self.walk(points, q, meter, &mut |h| {
            match h {
                Hit::Node(v) => out.nodes.push(v),
                Hit::Point(i) => out.points.push(i),
            }
            false
        });
        out
    }

    pub fn node_size(&self, v: usize) -> usize {
        self.nodes[v].end - self.nodes[v].start
    }

    /// Pushes per-node amounts down to the points below each node.
    pub fn flush(&self, node_amounts: &mut [u64], point_totals: &mut [u64]) {
        for v in 0..self.nodes.len() {
            let a = node_amounts[v];
            if a == 0 {
                continue;
            }
            node_amounts[v] = 0;
            match self.nodes[v].kids {
                Some([l, r]) => {
                    node_amounts[l] += a;
                    node_amounts[r] += a;
                }
                None => {
                    for &i in &self.ids[self.nodes[v].start..self.nodes[v].end] {
                        point_totals[i] += a;
                    }
                }
            }
        }
    }
}

/// Separate k-d trees over consecutive groups of `m` ids. Queries are
/// decomposable, so each one is the sum over groups.
#[derive(Clone, Debug)]
pub struct Grouped {
    pub groups: Vec<KdIndex>,
}

impl Grouped {
    pub fn build(points: &[Param], ids: &[usize], dim: usize, m: usize, seed: u64, exec: Execution, meter: &mut CostMeter) -> Self {
        let chunks: Vec<&[usize]> = ids.chunks(m.max(1)).collect();
        let built = par::map_range(exec, chunks.len(), |g| {
            let mut local = CostMeter::new();
            let t = KdIndex::build(points, chunks[g], dim, seed.wrapping_add(g as u64), &mut local);
            (t, local)
        });
        let mut groups = Vec::with_capacity(built.len());
        for (t, m) in built {
            *meter += m;
            groups.push(t);
        }
        Grouped { groups }
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(KdIndex::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn query(&self, points: &[Param], q: &Range, mode: QueryMode, meter: &mut CostMeter) -> QueryResult {
        let mut out = QueryResult::default();
        for g in &self.groups {
            let r = g.query(points, q, mode, meter);
            out.count += r.count;
            out.ids.extend(r.ids);
            if mode == QueryMode::Empty && out.count > 0 {
                break;
            }
        }
        out
    }
}

/// `kd_box_query` over a single tree built on all of `points`.
pub fn kd_box_query(points: &[Param], dim: usize, q: &Range, mode: QueryMode, meter: &mut CostMeter) -> QueryResult {
    let ids: Vec<usize> = (0..points.len()).collect();
    KdIndex::build(points, &ids, dim, 0, meter).query(points, q, mode, meter)
}
