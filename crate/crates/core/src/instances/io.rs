//! Plain-text instance files.
//!
//! Point files hold one point per line with 2 or 3 whitespace-separated
//! coordinates. Segment files hold `H x x' y` and `V xi eta eta'` lines; range
//! files mix 2-column point lines with `R xlo xhi ylo yhi` lines. Lines
//! starting with `#` and blank lines are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::types::{HSeg, Instance, RangeInstance, Rect, SegmentSet, VSeg};
use crate::error::{Error, Result};
use crate::geom::{Point2, Point3, PointSequence};

pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
    parse(&fs::read_to_string(path)?)
}

pub fn save(instance: &Instance, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, render(instance))?;
    Ok(())
}

enum Line {
    Point(Vec<f64>),
    H(HSeg),
    V(VSeg),
    R(Rect),
}

fn numbers<'a>(it: impl Iterator<Item = &'a str>, line: usize) -> Result<Vec<f64>> {
    it.map(|t| {
        let v = t.parse::<f64>().map_err(|_| Error::Parse { line, msg: format!("not a number: `{t}`") })?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Parse { line, msg: format!("non-finite value `{t}`") })
        }
    })
    .collect()
}

fn parse_line(text: &str, line: usize) -> Result<Option<Line>> {
    let text = text.trim();
    if text.is_empty() || text.starts_with('#') {
        return Ok(None);
    }
    let mut toks = text.split_whitespace();
    let head = toks.clone().next().unwrap_or_default();
    let tagged = matches!(head, "H" | "V" | "R");
    if tagged {
        toks.next();
    }
    let v = numbers(toks, line)?;
    let want = |k: usize| {
        if v.len() == k {
            Ok(())
        } else {
            Err(Error::Parse { line, msg: format!("`{head}` line needs {k} values, got {}", v.len()) })
        }
    };
    Ok(Some(match head {
        "H" => {
            want(3)?;
            // Endpoints are stored ordered.
            Line::H(HSeg { x0: v[0].min(v[1]), x1: v[0].max(v[1]), y: v[2] })
        }
        "V" => {
            want(3)?;
            Line::V(VSeg { x: v[0], y0: v[1].min(v[2]), y1: v[1].max(v[2]) })
        }
        "R" => {
            want(4)?;
            Line::R(Rect { xlo: v[0], xhi: v[1], ylo: v[2], yhi: v[3] })
        }
        _ => Line::Point(v),
    }))
}

/// Parses file contents; the kind of instance is inferred from the lines.
pub fn parse(text: &str) -> Result<Instance> {
    let mut pts: Vec<(usize, Vec<f64>)> = Vec::new();
    let mut segs = SegmentSet::default();
    let mut rects = Vec::new();
    for (i, l) in text.lines().enumerate() {
        match parse_line(l, i + 1)? {
            None => {}
            Some(Line::Point(v)) => pts.push((i + 1, v)),
            Some(Line::H(h)) => segs.horizontal.push(h),
            Some(Line::V(v)) => segs.vertical.push(v),
            Some(Line::R(r)) => rects.push(r),
        }
    }
    if !segs.is_empty() {
        if let Some((line, _)) = pts.first() {
            return Err(Error::Parse { line: *line, msg: "point line in a segment file".into() });
        }
        if !rects.is_empty() {
            return Err(Error::Parse { line: 0, msg: "segment file contains rectangles".into() });
        }
        return Ok(Instance::Segments(segs));
    }
    let dim = match pts.first() {
        Some((_, v)) => v.len(),
        None if !rects.is_empty() => 2,
        None => return Err(Error::EmptyInput),
    };
    if let Some((line, v)) = pts.iter().find(|(_, v)| v.len() != dim) {
        return Err(Error::Parse {
            line: *line,
            msg: Error::DimensionMismatch { expected: dim, got: v.len() }.to_string(),
        });
    }
    if !rects.is_empty() {
        if dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: dim });
        }
        let points = pts.into_iter().map(|(_, v)| Point2 { x: v[0], y: v[1] }).collect();
        return Ok(Instance::Ranges(RangeInstance { points, rects }));
    }
    match dim {
        2 => Ok(Instance::Points2(PointSequence::new(
            pts.into_iter().map(|(_, v)| Point2 { x: v[0], y: v[1] }).collect(),
        )?)),
        3 => Ok(Instance::Points3(PointSequence::new(
            pts.into_iter().map(|(_, v)| Point3 { x: v[0], y: v[1], z: v[2] }).collect(),
        )?)),
        d => Err(Error::Parse { line: pts[0].0, msg: format!("points must have 2 or 3 coordinates, got {d}") }),
    }
}

/// Text form of an instance. Coordinates use the shortest decimal that
/// parses back to the same `f64`.
pub fn render(instance: &Instance) -> String {
    let mut s = String::new();
    match instance {
        Instance::Points2(p) => {
            for q in p.points() {
                let _ = writeln!(s, "{:?} {:?}", q.x, q.y);
            }
        }
        Instance::Points3(p) => {
            for q in p.points() {
                let _ = writeln!(s, "{:?} {:?} {:?}", q.x, q.y, q.z);
            }
        }
        Instance::Segments(g) => {
            for h in &g.horizontal {
                let _ = writeln!(s, "H {:?} {:?} {:?}", h.x0, h.x1, h.y);
            }
            for v in &g.vertical {
                let _ = writeln!(s, "V {:?} {:?} {:?}", v.x, v.y0, v.y1);
            }
        }
        Instance::Ranges(r) => {
            for q in &r.points {
                let _ = writeln!(s, "{:?} {:?}", q.x, q.y);
            }
            for q in &r.rects {
                let _ = writeln!(s, "R {:?} {:?} {:?} {:?}", q.xlo, q.xhi, q.ylo, q.yhi);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_inferred() {
        let i = parse("# comment\n1 2 3\n4 5 6\n").unwrap();
        assert_eq!(i.points3().unwrap().len(), 2);
        let i = parse("1 2\n\n3 4\n").unwrap();
        assert_eq!(i.points2().unwrap().len(), 2);
    }

    #[test]
    fn mixed_columns_rejected_with_line() {
        match parse("1 2\n3 4 5\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse("1 2\nx 4\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn segments_and_ranges() {
        let i = parse("H 0 2 1\nV 1 0 2\n").unwrap();
        let Instance::Segments(s) = i else { panic!() };
        assert_eq!(s.horizontal.len() + s.vertical.len(), 2);
        let i = parse("0.5 0.5\nR 0 1 0 1\n").unwrap();
        assert!(matches!(i, Instance::Ranges(_)));
        assert!(parse("H 0 2\n").is_err());
    }

    #[test]
    fn awkward_floats_roundtrip() {
        let pts = vec![
            Point2 { x: 0.1, y: 1e-300 },
            Point2 { x: -1.7976931348623157e308, y: 5e-324 },
            Point2 { x: 1.0 / 3.0, y: -0.0 },
        ];
        let inst = Instance::Points2(PointSequence::new(pts).unwrap());
        assert_eq!(parse(&render(&inst)).unwrap(), inst);
    }
}
