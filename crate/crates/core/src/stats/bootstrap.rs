use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::{lower_median, mean, StatsError, DEFAULT_SEED};

const PROB_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Mean,
    Median,
}

impl Statistic {
    pub fn apply(self, samples: &[f64]) -> f64 {
        match self {
            Statistic::Mean => mean(samples),
            Statistic::Median => lower_median(samples),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BootstrapConfig {
    pub resamples: usize,
    pub confidence: f64,
    pub seed: u64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            resamples: 10_000,
            confidence: 0.95,
            seed: DEFAULT_SEED,
        }
    }
}

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal")
}

/// Linear-interpolation quantile of already sorted data (`q` in `[0, 1]`).
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Bias-corrected and accelerated bootstrap interval for `statistic`.
///
/// Resample `b` draws from its own ChaCha stream (`seed`, stream `b`), so the
/// interval does not depend on how many threads compute it. Constant samples
/// collapse to the point.
pub fn bootstrap_ci_bca(
    samples: &[f64],
    statistic: Statistic,
    config: &BootstrapConfig,
) -> Result<(f64, f64), StatsError> {
    let n = samples.len();
    if n < 2 {
        return Err(StatsError::InsufficientData(format!(
            "bootstrap needs at least 2 samples, got {n}"
        )));
    }
    if config.resamples < 1000 {
        return Err(StatsError::Range(format!(
            "at least 1000 resamples required, got {}",
            config.resamples
        )));
    }
    if !(config.confidence > 0.0 && config.confidence < 1.0) {
        return Err(StatsError::Range(format!("confidence {}", config.confidence)));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(StatsError::Range("samples must be finite".into()));
    }
    if samples.iter().all(|&x| x == samples[0]) {
        return Ok((samples[0], samples[0]));
    }

    let estimate = statistic.apply(samples);
    let mut replicates: Vec<f64> = (0..config.resamples)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(b as u64);
            let resample: Vec<f64> = (0..n).map(|_| samples[rng.gen_range(0..n)]).collect();
            statistic.apply(&resample)
        })
        .collect();
    replicates.sort_by(f64::total_cmp);

    let normal = standard_normal();
    let below = replicates.iter().filter(|&&t| t < estimate).count() as f64;
    let z0 = normal.inverse_cdf((below / replicates.len() as f64).clamp(PROB_EPS, 1.0 - PROB_EPS));

    // acceleration from jackknife skewness
    let jackknife: Vec<f64> = (0..n)
        .map(|i| {
            let rest: Vec<f64> = samples
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .collect();
            statistic.apply(&rest)
        })
        .collect();
    let jack_mean = mean(&jackknife);
    let (num, den) = jackknife.iter().fold((0.0, 0.0), |(num, den), &t| {
        let d = jack_mean - t;
        (num + d * d * d, den + d * d)
    });
    let acceleration = if den > 0.0 {
        num / (6.0 * den.powf(1.5))
    } else {
        0.0
    };

    let alpha = (1.0 - config.confidence) / 2.0;
    let adjust = |z: f64| {
        let shifted = z0 + z;
        let denom = 1.0 - acceleration * shifted;
        if denom <= 0.0 {
            return if shifted > 0.0 { 1.0 } else { 0.0 };
        }
        normal.cdf(z0 + shifted / denom)
    };
    let low_q = adjust(normal.inverse_cdf(alpha));
    let high_q = adjust(normal.inverse_cdf(1.0 - alpha));
    Ok((percentile(&replicates, low_q), percentile(&replicates, high_q)))
}
