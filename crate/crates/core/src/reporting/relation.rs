use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{BoxD, Point2};
use crate::instances::{HSeg, Instance, RangeInstance, Rect, SegmentSet, VSeg};

/// A point in a parameter space of dimension at most 4; unused axes are 0.
pub type Param = [f64; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// Horizontal `(x, x', y)` against vertical `(xi, eta, eta')`.
    Segint,
    /// Point `(x, y)` against rectangle `(xi, xi', eta, eta')`.
    Rangerep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// For each axis of one color's space, which coordinates of an
/// opposite-color point bound its interaction range from below and above.
type Bounds = &'static [(Option<usize>, Option<usize>)];

impl Relation {
    pub fn dim(self, color: Color) -> usize {
        match (self, color) {
            (Relation::Segint, _) => 3,
            (Relation::Rangerep, Color::Red) => 2,
            (Relation::Rangerep, Color::Blue) => 4,
        }
    }

    /// Bounds of the range, in `color`'s space, of points interacting with an
    /// opposite-color point.
    fn bounds(self, color: Color) -> Bounds {
        match (self, color) {
            (Relation::Segint, Color::Red) => &[(None, Some(0)), (Some(0), None), (Some(1), Some(2))],
            (Relation::Segint, Color::Blue) => &[(Some(0), Some(1)), (None, Some(2)), (Some(2), None)],
            (Relation::Rangerep, Color::Red) => &[(Some(0), Some(1)), (Some(2), Some(3))],
            (Relation::Rangerep, Color::Blue) => &[(None, Some(0)), (Some(0), None), (None, Some(1)), (Some(1), None)],
        }
    }
}

/// Closed box whose sides may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub dim: usize,
    pub lo: Param,
    pub hi: Param,
}

impl Range {
    pub fn everything(dim: usize) -> Self {
        Range { dim, lo: [f64::NEG_INFINITY; 4], hi: [f64::INFINITY; 4] }
    }

    pub fn from_box(b: &BoxD) -> Self {
        let mut r = Range::everything(b.dim());
        r.lo[..b.dim()].copy_from_slice(b.lo());
        r.hi[..b.dim()].copy_from_slice(b.hi());
        r
    }

    pub fn contains(&self, p: &Param) -> bool {
        (0..self.dim).all(|a| self.lo[a] <= p[a] && p[a] <= self.hi[a])
    }
}

/// Red and blue parameter points with the interaction relation between them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationInstance {
    pub relation: Relation,
    pub red: Vec<Param>,
    pub blue: Vec<Param>,
}

impl RelationInstance {
    pub fn points(&self, color: Color) -> &[Param] {
        match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }

    pub fn len(&self) -> usize {
        self.red.len() + self.blue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points of `color.other()` interacting with point `i` of `color` form
    /// this range in the other color's space.
    pub fn range_of(&self, color: Color, i: usize) -> Range {
        let q = &self.points(color)[i];
        let target = color.other();
        let mut r = Range::everything(self.relation.dim(target));
        for (k, &(lo, hi)) in self.relation.bounds(target).iter().enumerate() {
            if let Some(t) = lo {
                r.lo[k] = q[t];
            }
            if let Some(t) = hi {
                r.hi[k] = q[t];
            }
        }
        r
    }

    pub fn interacts(&self, red: usize, blue: usize) -> bool {
        self.range_of(Color::Blue, blue).contains(&self.red[red])
    }

    /// Ranges, in the space of `color.other()`, of the opposite points whose
    /// interaction range meets `cell` and of those whose range contains it.
    /// The cell is safe exactly when no opposite point lies in the first but
    /// not the second.
    pub fn crossing_ranges(&self, color: Color, cell: &Range) -> (Range, Range) {
        let src = self.relation.dim(color.other());
        let (mut meets, mut holds) = (Range::everything(src), Range::everything(src));
        for (k, &(lo, hi)) in self.relation.bounds(color).iter().enumerate() {
            let (a, b) = (cell.lo[k], cell.hi[k]);
            if let Some(t) = lo {
                meets.hi[t] = meets.hi[t].min(b);
                holds.hi[t] = holds.hi[t].min(a);
            }
            if let Some(t) = hi {
                meets.lo[t] = meets.lo[t].max(a);
                holds.lo[t] = holds.lo[t].max(b);
            }
        }
        (meets, holds)
    }

    pub fn segment_red(&self, i: usize) -> HSeg {
        let p = self.red[i];
        HSeg { x0: p[0], x1: p[1], y: p[2] }
    }

    pub fn segment_blue(&self, j: usize) -> VSeg {
        let q = self.blue[j];
        VSeg { x: q[0], y0: q[1], y1: q[2] }
    }

    pub fn point_red(&self, i: usize) -> Point2 {
        Point2 { x: self.red[i][0], y: self.red[i][1] }
    }

    pub fn rect_blue(&self, j: usize) -> Rect {
        let q = self.blue[j];
        Rect { xlo: q[0], xhi: q[1], ylo: q[2], yhi: q[3] }
    }

    /// Inverse of [`encode_relation`].
    pub fn decode(&self) -> Instance {
        match self.relation {
            Relation::Segint => Instance::Segments(SegmentSet {
                horizontal: (0..self.red.len()).map(|i| self.segment_red(i)).collect(),
                vertical: (0..self.blue.len()).map(|j| self.segment_blue(j)).collect(),
            }),
            Relation::Rangerep => Instance::Ranges(RangeInstance {
                points: (0..self.red.len()).map(|i| self.point_red(i)).collect(),
                rects: (0..self.blue.len()).map(|j| self.rect_blue(j)).collect(),
            }),
        }
    }
}

/// Maps segments or points-and-rectangles to parameter points.
pub fn encode_relation(raw: &Instance) -> Result<RelationInstance> {
    match raw {
        Instance::Segments(s) => {
            s.validate()?;
            Ok(RelationInstance {
                relation: Relation::Segint,
                red: s.horizontal.iter().map(|h| [h.x0, h.x1, h.y, 0.0]).collect(),
                blue: s.vertical.iter().map(|v| [v.x, v.y0, v.y1, 0.0]).collect(),
            })
        }
        Instance::Ranges(r) => {
            r.validate()?;
            Ok(RelationInstance {
                relation: Relation::Rangerep,
                red: r.points.iter().map(|p| [p.x, p.y, 0.0, 0.0]).collect(),
                blue: r.rects.iter().map(|q| [q.xlo, q.xhi, q.ylo, q.yhi]).collect(),
            })
        }
        other => Err(Error::InvalidSpec(format!("{} input is not a red/blue relation", other.kind()))),
    }
}
