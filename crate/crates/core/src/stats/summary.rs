use serde::{Deserialize, Serialize};

use super::{bootstrap_ci_bca, BootstrapConfig, Statistic, StatsError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauMass {
    pub tau: f64,
    /// Scores `≥ tau`.
    pub count: usize,
    pub proportion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionSummary {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub mass_at_tau: Vec<TauMass>,
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Lower median: element `(n - 1) / 2` of the sorted data.
pub fn lower_median(xs: &[f64]) -> f64 {
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted[(sorted.len() - 1) / 2]
}

pub fn summarize(scores: &[f64], taus: &[f64]) -> Result<DistributionSummary, StatsError> {
    summarize_with(scores, taus, &BootstrapConfig::default())
}

/// Mean, lower median, BCa interval of the mean and the mass at or above
/// each threshold.
pub fn summarize_with(
    scores: &[f64],
    taus: &[f64],
    bootstrap: &BootstrapConfig,
) -> Result<DistributionSummary, StatsError> {
    if scores.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    let n = scores.len();
    let (ci95_low, ci95_high) = if n < 2 {
        (scores[0], scores[0])
    } else {
        bootstrap_ci_bca(scores, Statistic::Mean, bootstrap)?
    };
    let mass_at_tau = taus
        .iter()
        .map(|&tau| {
            let count = scores.iter().filter(|&&s| s >= tau).count();
            TauMass {
                tau,
                count,
                proportion: count as f64 / n as f64,
            }
        })
        .collect();
    Ok(DistributionSummary {
        n,
        mean: mean(scores),
        median: lower_median(scores),
        ci95_low,
        ci95_high,
        mass_at_tau,
    })
}
