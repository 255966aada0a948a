use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Instance family. Parameterized families are written `name(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `h` maximal points, all others inside one box below the staircase.
    MaximaEasy { h: usize },
    /// Every point maximal.
    MaximaHard,
    /// Three hull vertices, all others inside one triangle below the hull.
    Hull2dEasy,
    /// Every point on the upper hull.
    Hull2dHard,
    /// Four hull vertices, all others inside one tetrahedron below the hull.
    Hull3dEasy,
    /// Every point on the upper hull.
    Hull3dHard,
    Clustered { k: usize },
    UniformDisk,
    UniformSquare,
    UniformBall,
    SegintCrossingGrid,
    SegintSeparated,
    RangerepRandom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Points2,
    Points3,
    Segments,
    Ranges,
}

impl Family {
    pub const ALL_NAMES: [&'static str; 13] = [
        "maxima-easy",
        "maxima-hard",
        "hull2d-easy",
        "hull2d-hard",
        "hull3d-easy",
        "hull3d-hard",
        "clustered",
        "uniform-disk",
        "uniform-square",
        "uniform-ball",
        "segint-crossing-grid",
        "segint-separated",
        "rangerep-random",
    ];

    pub fn kind(&self) -> InstanceKind {
        match self {
            Family::Hull3dEasy | Family::Hull3dHard | Family::UniformBall => InstanceKind::Points3,
            Family::SegintCrossingGrid | Family::SegintSeparated => InstanceKind::Segments,
            Family::RangerepRandom => InstanceKind::Ranges,
            _ => InstanceKind::Points2,
        }
    }

    /// Smallest `n` the family can produce.
    pub fn min_n(&self) -> usize {
        match self {
            Family::MaximaEasy { h } => *h,
            Family::Hull2dEasy => 3,
            Family::Hull3dEasy => 4,
            Family::SegintCrossingGrid | Family::SegintSeparated | Family::RangerepRandom => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::MaximaEasy { h: 1 } => "maxima-easy",
            Family::MaximaEasy { h } => return write!(f, "maxima-easy({h})"),
            Family::MaximaHard => "maxima-hard",
            Family::Hull2dEasy => "hull2d-easy",
            Family::Hull2dHard => "hull2d-hard",
            Family::Hull3dEasy => "hull3d-easy",
            Family::Hull3dHard => "hull3d-hard",
            Family::Clustered { k } => return write!(f, "clustered({k})"),
            Family::UniformDisk => "uniform-disk",
            Family::UniformSquare => "uniform-square",
            Family::UniformBall => "uniform-ball",
            Family::SegintCrossingGrid => "segint-crossing-grid",
            Family::SegintSeparated => "segint-separated",
            Family::RangerepRandom => "rangerep-random",
        };
        f.write_str(name)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, param) = match s.find(['(', ':']) {
            Some(i) => {
                let rest = s[i + 1..].trim_end_matches(')');
                let k = rest.parse::<usize>().map_err(|_| Error::UnknownFamily(s.to_string()))?;
                (&s[..i], Some(k))
            }
            None => (s, None),
        };
        let fam = match (name, param) {
            ("maxima-easy", p) => Family::MaximaEasy { h: p.unwrap_or(1) },
            ("clustered", p) => Family::Clustered { k: p.unwrap_or(8) },
            (_, Some(_)) => return Err(Error::UnknownFamily(s.to_string())),
            ("maxima-hard", None) => Family::MaximaHard,
            ("hull2d-easy", None) => Family::Hull2dEasy,
            ("hull2d-hard", None) => Family::Hull2dHard,
            ("hull3d-easy", None) => Family::Hull3dEasy,
            ("hull3d-hard", None) => Family::Hull3dHard,
            ("uniform-disk", None) => Family::UniformDisk,
            ("uniform-square", None) => Family::UniformSquare,
            ("uniform-ball", None) => Family::UniformBall,
            ("segint-crossing-grid", None) => Family::SegintCrossingGrid,
            ("segint-separated", None) => Family::SegintSeparated,
            ("rangerep-random", None) => Family::RangerepRandom,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        };
        if matches!(fam, Family::MaximaEasy { h: 0 } | Family::Clustered { k: 0 }) {
            return Err(Error::InvalidSpec(format!("{s}: parameter must be positive")));
        }
        Ok(fam)
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What to generate: family, size and seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Result<Self> {
        if n < family.min_n().max(1) {
            return Err(Error::InvalidSpec(format!("{family} needs n >= {}, got {n}", family.min_n().max(1))));
        }
        Ok(InstanceSpec { family, n, seed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for name in Family::ALL_NAMES {
            let f: Family = name.parse().unwrap();
            assert!(f.to_string().starts_with(name));
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert_eq!("clustered(4)".parse::<Family>().unwrap(), Family::Clustered { k: 4 });
        assert_eq!("maxima-easy:3".parse::<Family>().unwrap(), Family::MaximaEasy { h: 3 });
        assert!("hull2d-hard(2)".parse::<Family>().is_err());
        assert!("nope".parse::<Family>().is_err());
        assert!(InstanceSpec::new(Family::Hull3dEasy, 3, 0).is_err());
    }
}
