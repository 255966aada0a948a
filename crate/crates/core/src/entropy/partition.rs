use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{BoxD, SimplexD};

/// Problem a partition is meant to be respectful for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Maxima2d,
    Upperhull2d,
    Upperhull3d,
    RelationSafe,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Enclosure {
    Singleton,
    Box(BoxD),
    Simplex(SimplexD),
}

/// Partition of point ids `0..n` into blocks, each with an enclosure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RespectfulPartition {
    n: usize,
    subsets: Vec<Vec<usize>>,
    enclosures: Vec<Enclosure>,
    problem: Problem,
}

impl RespectfulPartition {
    /// Checks that `subsets` are disjoint, cover `0..n`, and that singleton
    /// enclosures go with one-element blocks. Containment of points in their
    /// enclosures is checked by [`super::is_respectful`], which sees the points.
    pub fn new(n: usize, subsets: Vec<Vec<usize>>, enclosures: Vec<Enclosure>, problem: Problem) -> Result<Self> {
        if subsets.len() != enclosures.len() {
            return Err(Error::MalformedPartition(format!(
                "{} subsets but {} enclosures",
                subsets.len(),
                enclosures.len()
            )));
        }
        let mut seen = vec![false; n];
        for (s, e) in subsets.iter().zip(&enclosures) {
            if s.is_empty() {
                return Err(Error::MalformedPartition("empty subset".into()));
            }
            if matches!(e, Enclosure::Singleton) && s.len() != 1 {
                return Err(Error::MalformedPartition(format!("singleton enclosure on {} points", s.len())));
            }
            for &i in s {
                if i >= n || seen[i] {
                    return Err(Error::MalformedPartition(format!("id {i} out of range or repeated")));
                }
                seen[i] = true;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedPartition(format!("id {i} not covered")));
        }
        Ok(RespectfulPartition { n, subsets, enclosures, problem })
    }

    /// Every point in its own block.
    pub fn singletons(n: usize, problem: Problem) -> Self {
        RespectfulPartition {
            n,
            subsets: (0..n).map(|i| vec![i]).collect(),
            enclosures: vec![Enclosure::Singleton; n],
            problem,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn enclosures(&self) -> &[Enclosure] {
        &self.enclosures
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.subsets.iter().map(Vec::len).collect()
    }

    /// Entropy in bits of the block sizes.
    pub fn entropy(&self) -> f64 {
        partition_entropy(&self.sizes())
    }
}

/// `sum_k (|S_k| / n) log2(n / |S_k|)` with `n` the sum of the sizes.
pub fn partition_entropy(sizes: &[usize]) -> f64 {
    let n: usize = sizes.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let s = s as f64;
            s / n * (n / s).log2()
        })
        .sum::<f64>()
        .max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_of_sizes() {
        assert_eq!(partition_entropy(&[5]), 0.0);
        assert!((partition_entropy(&[4, 4, 4]) - 3f64.log2()).abs() < 1e-12);
        assert!((partition_entropy(&[1; 8]) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn malformed_rejected() {
        let e = |k| vec![Enclosure::Singleton; k];
        assert!(RespectfulPartition::new(2, vec![vec![0], vec![0]], e(2), Problem::Maxima2d).is_err());
        assert!(RespectfulPartition::new(2, vec![vec![0]], e(1), Problem::Maxima2d).is_err());
        assert!(RespectfulPartition::new(2, vec![vec![0, 1]], e(1), Problem::Maxima2d).is_err());
        assert!(RespectfulPartition::new(2, vec![vec![1], vec![0]], e(2), Problem::Maxima2d).is_ok());
    }
}
