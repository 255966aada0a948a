use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Row;
use crate::error::{Error, Result};

/// Mean cost of all runs at one ladder size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderPoint {
    pub n: usize,
    pub runs: usize,
    pub mean_cost: f64,
    pub per_n: f64,
    pub per_nlogn: f64,
    /// `mean_cost / (n (mean h_kd + 1))` when h_kd was recorded.
    pub per_entropy: Option<f64>,
}

/// Bands of one (family, algorithm) series. A band is max/min of a ratio
/// across the ladder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesFit {
    pub family: String,
    pub algorithm: String,
    pub points: Vec<LadderPoint>,
    pub band_n: f64,
    pub band_nlogn: f64,
    /// Largest per-run `cost / (n (h_kd + 1))`.
    pub entropy_const: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub series: Vec<SeriesFit>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub band_n: Option<f64>,
    pub band_nlogn: Option<f64>,
    pub entropy_const: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandCheck {
    pub family: String,
    pub algorithm: String,
    pub metric: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

fn band(v: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    hi / lo
}

/// Groups rows by (family, algorithm) and computes their bands. Every
/// series needs at least three ladder sizes.
pub fn fit_scaling(rows: &[Row]) -> Result<ScalingFit> {
    let mut groups: BTreeMap<(&str, &str), BTreeMap<usize, Vec<&Row>>> = BTreeMap::new();
    for r in rows {
        groups.entry((&r.family, &r.algorithm)).or_default().entry(r.n).or_default().push(r);
    }
    if groups.is_empty() {
        return Err(Error::Experiment("no rows to fit".into()));
    }
    let mut series = Vec::new();
    for ((family, algorithm), by_n) in groups {
        if by_n.len() < 3 {
            return Err(Error::Experiment(format!("{family}/{algorithm}: {} ladder sizes, need at least 3", by_n.len())));
        }
        let points: Vec<LadderPoint> = by_n
            .iter()
            .map(|(&n, runs)| {
                let k = runs.len() as f64;
                let mean_cost = runs.iter().map(|r| r.cost() as f64).sum::<f64>() / k;
                let nf = n as f64;
                let h: Option<Vec<f64>> = runs.iter().map(|r| r.h_kd).collect();
                LadderPoint {
                    n,
                    runs: runs.len(),
                    mean_cost,
                    per_n: mean_cost / nf,
                    per_nlogn: mean_cost / (nf * nf.log2().max(1.0)),
                    per_entropy: h.map(|h| mean_cost / (nf * (h.iter().sum::<f64>() / k + 1.0))),
                }
            })
            .collect();
        let entropy_const = by_n
            .values()
            .flatten()
            .map(|r| r.h_kd.map(|h| r.cost() as f64 / (r.n as f64 * (h + 1.0))))
            .collect::<Option<Vec<f64>>>()
            .map(|v| v.into_iter().fold(0.0, f64::max));
        series.push(SeriesFit {
            family: family.to_string(),
            algorithm: algorithm.to_string(),
            band_n: band(points.iter().map(|p| p.per_n)),
            band_nlogn: band(points.iter().map(|p| p.per_nlogn)),
            points,
            entropy_const,
        });
    }
    Ok(ScalingFit { series })
}

impl ScalingFit {
    /// One check per configured threshold per series.
    pub fn check(&self, t: &Thresholds) -> Vec<BandCheck> {
        let mut out = Vec::new();
        for s in &self.series {
            let mut push = |metric, value: Option<f64>, threshold: Option<f64>| {
                if let Some(threshold) = threshold {
                    let value = value.unwrap_or(f64::NAN);
                    out.push(BandCheck {
                        family: s.family.clone(),
                        algorithm: s.algorithm.clone(),
                        metric,
                        value,
                        threshold,
                        pass: value <= threshold,
                    });
                }
            };
            push("band cost/n", Some(s.band_n), t.band_n);
            push("band cost/(n log2 n)", Some(s.band_nlogn), t.band_nlogn);
            push("cost/(n (h_kd+1))", s.entropy_const, t.entropy_const);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize, cost: u64) -> Row {
        Row {
            family: "f".into(),
            n,
            seed: 0,
            perm: 0,
            algorithm: "a".into(),
            comparisons: cost,
            orient2d: 0,
            orient3d: 0,
            dominance: 0,
            output_size: 0,
            h_kd: Some(1.0),
            h_vert: None,
            f_per_n: None,
            wall_ns: 0,
        }
    }

    #[test]
    fn linear_cost_has_unit_band() {
        let rows: Vec<Row> = [1024, 2048, 4096].iter().map(|&n| row(n, 7 * n as u64)).collect();
        let fit = fit_scaling(&rows).unwrap();
        assert_eq!(fit.series[0].band_n, 1.0);
        assert_eq!(fit.series[0].entropy_const, Some(3.5));
    }

    #[test]
    fn nlogn_cost_has_unit_band() {
        let rows: Vec<Row> = [8usize, 64, 512].iter().map(|&n| row(n, (n * n.trailing_zeros() as usize) as u64)).collect();
        let fit = fit_scaling(&rows).unwrap();
        assert_eq!(fit.series[0].band_nlogn, 1.0);
        assert!(fit.series[0].band_n > 2.9);
    }

    #[test]
    fn too_few_sizes() {
        let rows = vec![row(10, 10), row(20, 20), row(20, 20)];
        assert!(fit_scaling(&rows).is_err());
        assert!(fit_scaling(&[]).is_err());
    }

    #[test]
    fn thresholds_flag_failures() {
        let rows: Vec<Row> = [8usize, 64, 512].iter().map(|&n| row(n, (n * n) as u64)).collect();
        let checks = fit_scaling(&rows).unwrap().check(&Thresholds { band_n: Some(2.0), ..Default::default() });
        assert_eq!(checks.len(), 1);
        assert!(!checks[0].pass);
    }
}
