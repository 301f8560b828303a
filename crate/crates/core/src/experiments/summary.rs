use serde::{Deserialize, Serialize};

use super::{run_survey, ExperimentConfig, HomologyMode, TrialRecord};
use crate::error::{Error, Result};

/// Statistics for one grid point. Per-dimension entries are `None` when no
/// trial produced that Betti number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub p: f64,
    pub trials: usize,
    pub failed_trials: usize,
    pub betti_mean: Vec<Option<f64>>,
    /// Sample variance (denominator `count - 1`), zero for a single sample.
    pub betti_variance: Vec<Option<f64>>,
    /// Fraction of trials with `β̃_k = 0`.
    pub vanishing_frequency: Vec<Option<f64>>,
    /// Fraction of trials with a sphere certificate of dimension `k`, up to
    /// the largest certificate dimension seen anywhere in the survey.
    pub certificate_frequency: Vec<f64>,
    pub mean_closed_sets: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub config: ExperimentConfig,
    pub points: Vec<PointSummary>,
    /// For each dimension, the number of strict local maxima of the mean
    /// curve over the grid. Filled in by [`betti_sweep`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_maxima: Option<Vec<usize>>,
}

impl SurveySummary {
    /// The `E[β̃_k]` curve over the grid, skipping points without data.
    pub fn mean_curve(&self, k: usize) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter_map(|pt| pt.betti_mean.get(k).copied().flatten().map(|m| (pt.p, m)))
            .collect()
    }
}

fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() < 2 {
        0.0
    } else {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    };
    (mean, var)
}

/// Per-point statistics of the records. Fails on an empty list or records
/// that do not belong to `cfg`.
pub fn aggregate(records: &[TrialRecord], cfg: &ExperimentConfig) -> Result<SurveySummary> {
    if records.is_empty() {
        return Err(Error::argument("no records to aggregate"));
    }
    for r in records {
        let ok = cfg.p_grid.get(r.p_index).is_some_and(|&p| p == r.p) && r.trial_index < cfg.trials;
        if !ok {
            return Err(Error::argument(format!(
                "record (p_index {}, trial {}) does not match the configuration",
                r.p_index, r.trial_index
            )));
        }
    }
    let dims = records
        .iter()
        .map(|r| r.betti.len())
        .max()
        .unwrap_or(0)
        .max(cfg.reported_max_dim() + 1);
    let cert_dims = records
        .iter()
        .flat_map(|r| r.certificates.iter().map(|d| d + 1))
        .max()
        .unwrap_or(0);

    let points = cfg
        .p_grid
        .iter()
        .enumerate()
        .map(|(pi, &p)| {
            let here: Vec<&TrialRecord> = records.iter().filter(|r| r.p_index == pi).collect();
            let mut betti_mean = Vec::with_capacity(dims);
            let mut betti_variance = Vec::with_capacity(dims);
            let mut vanishing_frequency = Vec::with_capacity(dims);
            for k in 0..dims {
                let xs: Vec<f64> = here
                    .iter()
                    .filter_map(|r| r.betti.get(k).map(|&b| b as f64))
                    .collect();
                if xs.is_empty() {
                    betti_mean.push(None);
                    betti_variance.push(None);
                    vanishing_frequency.push(None);
                } else {
                    let (m, v) = mean_and_variance(&xs);
                    betti_mean.push(Some(m));
                    betti_variance.push(Some(v));
                    let zeros = xs.iter().filter(|&&x| x == 0.0).count();
                    vanishing_frequency.push(Some(zeros as f64 / xs.len() as f64));
                }
            }
            let certificate_frequency = (0..cert_dims)
                .map(|k| {
                    if here.is_empty() {
                        return 0.0;
                    }
                    let hits = here.iter().filter(|r| r.certificates.contains(&k)).count();
                    hits as f64 / here.len() as f64
                })
                .collect();
            let closed: Vec<f64> = here
                .iter()
                .filter_map(|r| r.closed_set_count.map(|c| c as f64))
                .collect();
            PointSummary {
                p,
                trials: here.len(),
                failed_trials: here.iter().filter(|r| !r.failures.is_empty()).count(),
                betti_mean,
                betti_variance,
                vanishing_frequency,
                certificate_frequency,
                mean_closed_sets: (!closed.is_empty()).then(|| mean_and_variance(&closed).0),
            }
        })
        .collect();
    Ok(SurveySummary {
        config: cfg.clone(),
        points,
        local_maxima: None,
    })
}

/// Number of strict local maxima of a curve. Runs of equal values count as
/// one point; a run is a maximum when every neighboring run is strictly
/// lower, so a constant curve has none.
pub fn count_local_maxima(values: &[f64]) -> usize {
    let mut runs: Vec<f64> = Vec::new();
    for &v in values {
        if runs.last() != Some(&v) {
            runs.push(v);
        }
    }
    if runs.len() < 2 {
        return 0;
    }
    (0..runs.len())
        .filter(|&i| {
            let left = i == 0 || runs[i - 1] < runs[i];
            let right = i + 1 == runs.len() || runs[i + 1] < runs[i];
            left && right
        })
        .count()
}

/// Survey across `p_grid` with exact homology, aggregated, with the
/// local-maxima count of every `E[β̃_k]` curve. Requires `n` within the
/// full-homology limit.
pub fn betti_sweep(
    cfg: &ExperimentConfig,
    jobs: Option<usize>,
) -> Result<(Vec<TrialRecord>, SurveySummary)> {
    if cfg.homology_mode() != HomologyMode::Full {
        return Err(Error::argument(format!(
            "a sweep needs exact homology: n = {} exceeds the limit of {} or homology is off",
            cfg.n, cfg.full_homology_vertices
        )));
    }
    let records = run_survey(cfg, jobs)?;
    let mut summary = aggregate(&records, cfg)?;
    let dims = summary.points.first().map_or(0, |p| p.betti_mean.len());
    let maxima = (0..dims)
        .map(|k| {
            let curve: Vec<f64> = summary.mean_curve(k).into_iter().map(|(_, m)| m).collect();
            count_local_maxima(&curve)
        })
        .collect();
    summary.local_maxima = Some(maxima);
    Ok((records, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(p_index: usize, trial: usize, betti: Vec<u64>) -> TrialRecord {
        TrialRecord {
            p_index,
            p: 0.5,
            trial_index: trial,
            derived_seed: 0,
            edge_count: 0,
            clique_number: None,
            neighborliness: None,
            closed_set_count: Some(4),
            retract_dimension: None,
            route: None,
            betti,
            truncated: false,
            torsion_seen: false,
            empty_complex: false,
            certificates: vec![],
            failures: vec![],
            wall_time_ms: None,
        }
    }

    #[test]
    fn identical_sphere_records() {
        let cfg = ExperimentConfig::new(6, vec![0.5], 3, 0, 4);
        let recs: Vec<_> = (0..3).map(|t| record(0, t, vec![0, 0, 0, 0, 1])).collect();
        let s = aggregate(&recs, &cfg).unwrap();
        assert_eq!(s.points[0].betti_mean[4], Some(1.0));
        assert_eq!(s.points[0].betti_variance[4], Some(0.0));
        assert_eq!(s.points[0].vanishing_frequency[4], Some(0.0));
        assert_eq!(s.points[0].mean_closed_sets, Some(4.0));
    }

    #[test]
    fn mixed_records() {
        let cfg = ExperimentConfig::new(6, vec![0.5], 2, 0, 1);
        let recs = vec![record(0, 0, vec![0, 0]), record(0, 1, vec![0, 2])];
        let s = aggregate(&recs, &cfg).unwrap();
        assert_eq!(s.points[0].betti_mean[1], Some(1.0));
        assert_eq!(s.points[0].betti_variance[1], Some(2.0));
        assert_eq!(s.points[0].vanishing_frequency[1], Some(0.5));
    }

    #[test]
    fn rejects_empty_and_mismatched() {
        let cfg = ExperimentConfig::new(6, vec![0.5], 2, 0, 1);
        assert!(aggregate(&[], &cfg).is_err());
        assert!(aggregate(&[record(1, 0, vec![0])], &cfg).is_err());
        assert!(aggregate(&[record(0, 5, vec![0])], &cfg).is_err());
    }

    #[test]
    fn local_maxima_counts() {
        assert_eq!(count_local_maxima(&[0.0; 5]), 0);
        assert_eq!(count_local_maxima(&[0.0, 1.0, 0.0]), 1);
        assert_eq!(count_local_maxima(&[0.0, 1.0, 1.0, 0.0]), 1);
        assert_eq!(count_local_maxima(&[0.0, 2.0, 1.0, 3.0, 0.0]), 2);
        assert_eq!(count_local_maxima(&[3.0, 1.0, 2.0]), 2);
        assert_eq!(count_local_maxima(&[]), 0);
    }

    #[test]
    fn sweep_endpoints() {
        let cfg = ExperimentConfig::new(6, vec![0.0, 0.5, 1.0], 4, 11, 4);
        let (recs, s) = betti_sweep(&cfg, None).unwrap();
        assert_eq!(recs.len(), 12);
        for k in 0..5 {
            assert_eq!(s.points[0].betti_mean[k], Some(0.0));
            let top = if k == 4 { 1.0 } else { 0.0 };
            assert_eq!(s.points[2].betti_mean[k], Some(top));
        }
        assert_eq!(s.local_maxima.as_ref().unwrap().len(), 5);
        let big = ExperimentConfig::new(20, vec![0.5], 1, 0, 2);
        assert!(betti_sweep(&big, None).is_err());
    }
}
