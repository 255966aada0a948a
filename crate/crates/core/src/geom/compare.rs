use super::point::{Axis, Coords};

/// Source of answers to "is coordinate `axis` of point `i` smaller than that of `j`?".
///
/// Algorithms in the comparison model consult only this trait, which lets an
/// adversary answer instead of real coordinates.
pub trait CoordCompare {
    fn len(&self) -> usize;
    fn less(&mut self, i: usize, j: usize, axis: Axis) -> bool;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Answers comparisons from actual coordinates.
pub struct PointsCompare<'a, P> {
    points: &'a [P],
}

impl<'a, P> PointsCompare<'a, P> {
    pub fn new(points: &'a [P]) -> Self {
        PointsCompare { points }
    }
}

impl<P: Coords> CoordCompare for PointsCompare<'_, P> {
    fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    fn less(&mut self, i: usize, j: usize, axis: Axis) -> bool {
        self.points[i].coord(axis.index()) < self.points[j].coord(axis.index())
    }
}
