//! Distribution summaries and the statistical checks used to compare runs:
//! Hoeffding tail bound, BCa bootstrap intervals, Wilcoxon signed-rank test
//! and Cliff's δ.

mod bootstrap;
mod effect;
mod summary;
mod wilcoxon;

pub use bootstrap::{bootstrap_ci_bca, percentile, BootstrapConfig, Statistic};
pub use effect::{cliffs_delta, cliffs_magnitude, EffectMagnitude};
pub use summary::{lower_median, mean, summarize, summarize_with, DistributionSummary, TauMass};
pub use wilcoxon::{wilcoxon_signed_rank, WilcoxonResult, EXACT_MAX_PAIRS};

use thiserror::Error;

/// Project-wide default seed.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("empty input")]
    EmptyInput,
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("paired samples differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// Two-sided Hoeffding bound `2·exp(−2·n·ε² / w²)` on the probability that
/// the mean of `n` i.i.d. variables with range width `w` deviates from its
/// expectation by at least `ε`. Values above 1 are vacuous and returned as is.
pub fn hoeffding_bound(n: u64, range_width: f64, epsilon: f64) -> Result<f64, StatsError> {
    if n == 0 {
        return Err(StatsError::Range("n must be at least 1".into()));
    }
    if !(range_width > 0.0 && range_width.is_finite()) {
        return Err(StatsError::Range(format!("range width {range_width}")));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(StatsError::Range(format!("epsilon {epsilon}")));
    }
    let exponent = -2.0 * n as f64 * epsilon * epsilon / (range_width * range_width);
    Ok(2.0 * exponent.exp())
}
