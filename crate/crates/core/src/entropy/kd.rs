//! The alternating-median k-d tree whose leaves form a respectful partition.

use serde::{Deserialize, Serialize};

use super::partition::{Enclosure, Problem, RespectfulPartition};
use super::region::{Staircase, UnderHull2};
use crate::error::{Error, Result};
use crate::geom::{BoxD, Point2, PointSequence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KdNode {
    pub depth: usize,
    /// Point ids inside the node, increasing.
    pub ids: Vec<usize>,
    /// Bounding box of the node's points.
    pub bbox: BoxD,
    /// Split axis (0 = x, 1 = y), value and children for internal nodes.
    pub split: Option<(usize, f64, [usize; 2])>,
}

impl KdNode {
    pub fn is_leaf(&self) -> bool {
        self.split.is_none()
    }
}

/// Node 0 is the root. Depth-`j` nodes split on axis `j mod 2`, starting with x.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KdTree2 {
    pub nodes: Vec<KdNode>,
}

impl KdTree2 {
    /// Leaf test: one point, or the box of the node's points lies in the
    /// closed region under the staircase (maxima) or upper hull.
    pub fn build(points: &[Point2], problem: Problem) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let leaf: Box<dyn Fn(&BoxD) -> bool> = match problem {
            Problem::Maxima2d => {
                let st = Staircase::new(points);
                Box::new(move |b: &BoxD| st.covers(&Point2 { x: b.hi()[0], y: b.hi()[1] }))
            }
            Problem::Upperhull2d => {
                let uh = UnderHull2::new(points);
                Box::new(move |b: &BoxD| {
                    uh.covers(&Point2 { x: b.lo()[0], y: b.hi()[1] }) && uh.covers(&Point2 { x: b.hi()[0], y: b.hi()[1] })
                })
            }
            p => return Err(Error::InvalidSpec(format!("k-d partition not defined for {p:?}"))),
        };
        let mut tree = KdTree2 { nodes: Vec::new() };
        let ids: Vec<usize> = (0..points.len()).collect();
        tree.grow(points, ids, 0, &*leaf);
        Ok(tree)
    }

    fn grow(&mut self, points: &[Point2], mut ids: Vec<usize>, depth: usize, leaf: &dyn Fn(&BoxD) -> bool) -> usize {
        let coords: Vec<[f64; 2]> = ids.iter().map(|&i| [points[i].x, points[i].y]).collect();
        let bbox = BoxD::bounding(coords.iter().map(|c| &c[..])).expect("nonempty node");
        let me = self.nodes.len();
        ids.sort_unstable();
        self.nodes.push(KdNode { depth, ids: ids.clone(), bbox, split: None });
        if ids.len() == 1 || leaf(&self.nodes[me].bbox) {
            return me;
        }
        let axis = depth % 2;
        let key = |i: usize| if axis == 0 { points[i].x } else { points[i].y };
        ids.sort_by(|&a, &b| key(a).total_cmp(&key(b)));
        let k = ids.len().div_ceil(2);
        let value = key(ids[k - 1]) / 2.0 + key(ids[k]) / 2.0;
        let hi = ids.split_off(k);
        let l = self.grow(points, ids, depth + 1, leaf);
        let r = self.grow(points, hi, depth + 1, leaf);
        self.nodes[me].split = Some((axis, value, [l, r]));
        me
    }

    pub fn leaves(&self) -> impl Iterator<Item = &KdNode> {
        self.nodes.iter().filter(|n| n.is_leaf())
    }

    pub fn partition(&self, problem: Problem) -> RespectfulPartition {
        let n = self.nodes[0].ids.len();
        let (subsets, enclosures) = self
            .leaves()
            .map(|l| {
                let e = if l.ids.len() == 1 { Enclosure::Singleton } else { Enclosure::Box(l.bbox.clone()) };
                (l.ids.clone(), e)
            })
            .unzip();
        RespectfulPartition::new(n, subsets, enclosures, problem).expect("leaves partition the input")
    }
}

/// Leaf boxes of the k-d tree as a partition.
pub fn kd_respectful_partition(seq: &PointSequence<Point2>, problem: Problem) -> Result<RespectfulPartition> {
    if !seq.general_position() {
        return Err(Error::Degenerate("k-d partition needs distinct coordinates".into()));
    }
    Ok(KdTree2::build(seq.points(), problem)?.partition(problem))
}
