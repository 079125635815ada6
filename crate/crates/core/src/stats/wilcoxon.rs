use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::{lower_median, StatsError};

/// Up to this many non-zero differences the p-value is exact.
pub const EXACT_MAX_PAIRS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    /// `min(W+, W−)`.
    pub w: f64,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Two-sided.
    pub p_value: f64,
    /// Lower median of `b − a` over all pairs.
    pub median_delta: f64,
    /// Pairs with a non-zero difference.
    pub m: usize,
    pub exact: bool,
}

/// Wilcoxon signed-rank test on the differences `b − a`.
///
/// Zero differences are dropped and tied magnitudes share their average
/// rank. With at most [`EXACT_MAX_PAIRS`] remaining pairs the p-value is the
/// exact share of the `2^m` sign patterns whose `min(W+, W−)` is at most the
/// observed `W`; otherwise a normal approximation with tie-corrected variance
/// and continuity correction is used.
pub fn wilcoxon_signed_rank(paired_a: &[f64], paired_b: &[f64]) -> Result<WilcoxonResult, StatsError> {
    if paired_a.len() != paired_b.len() {
        return Err(StatsError::LengthMismatch(paired_a.len(), paired_b.len()));
    }
    if paired_a.is_empty() {
        return Err(StatsError::InsufficientData("no pairs".into()));
    }
    let all: Vec<f64> = paired_a.iter().zip(paired_b).map(|(a, b)| b - a).collect();
    let diffs: Vec<f64> = all.iter().copied().filter(|d| *d != 0.0).collect();
    let m = diffs.len();
    if m < 5 {
        return Err(StatsError::InsufficientData(format!(
            "{m} non-zero differences, at least 5 needed"
        )));
    }

    let ranks = average_ranks(&diffs);
    // an empty f64 sum is -0.0
    let rank_sum = |positive: bool| -> f64 {
        0.0 + diffs.iter().zip(&ranks).filter(|(d, _)| (**d > 0.0) == positive).map(|(_, r)| r).sum::<f64>()
    };
    let (w_plus, w_minus) = (rank_sum(true), rank_sum(false));
    let w = w_plus.min(w_minus);

    let exact = m <= EXACT_MAX_PAIRS;
    let p_value = if exact {
        exact_p_value(&ranks, w)
    } else {
        normal_p_value(&ranks, w)
    };
    Ok(WilcoxonResult {
        w,
        w_plus,
        w_minus,
        p_value,
        median_delta: lower_median(&all),
        m,
        exact,
    })
}

/// Ranks of `|d|`, 1-based, ties averaged.
fn average_ranks(diffs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..diffs.len()).collect();
    order.sort_by(|&i, &j| diffs[i].abs().total_cmp(&diffs[j].abs()));
    let mut ranks = vec![0.0; diffs.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && diffs[order[end]].abs() == diffs[order[start]].abs() {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Counts sign patterns through the distribution of `2·W+`; average ranks
/// are multiples of 1/2, so doubling makes every rank an integer.
fn exact_p_value(ranks: &[f64], w: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (r * 2.0).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0u64; total + 1];
    counts[0] = 1;
    for &r in &doubled {
        for s in (r..=total).rev() {
            counts[s] += counts[s - r];
        }
    }
    let w2 = (w * 2.0).round() as usize;
    let hits: u64 = counts
        .iter()
        .enumerate()
        .filter(|&(s, _)| s.min(total - s) <= w2)
        .map(|(_, c)| c)
        .sum();
    hits as f64 / (1u64 << ranks.len()) as f64
}

fn normal_p_value(ranks: &[f64], w: f64) -> f64 {
    let m = ranks.len() as f64;
    let mean = m * (m + 1.0) / 4.0;
    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    for group in sorted.chunk_by(|a, b| a == b) {
        let t = group.len() as f64;
        tie_term += t * t * t - t;
    }
    let variance = m * (m + 1.0) * (2.0 * m + 1.0) / 24.0 - tie_term / 48.0;
    if variance <= 0.0 {
        return 1.0;
    }
    let z = ((w - mean + 0.5) / variance.sqrt()).min(0.0);
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * normal.cdf(z)).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_average_ties() {
        assert_eq!(average_ranks(&[3.0, -1.0, 1.0, 2.0]), [4.0, 1.5, 1.5, 3.0]);
    }

    #[test]
    fn all_zero_differences() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert!(matches!(
            wilcoxon_signed_rank(&a, &a),
            Err(StatsError::InsufficientData(_))
        ));
        assert_eq!(
            wilcoxon_signed_rank(&a, &a[..4]),
            Err(StatsError::LengthMismatch(5, 4))
        );
    }

    #[test]
    fn textbook_small_sample() {
        // differences 1..=6 all positive: W- = 0, only 2 of 64 patterns are as extreme
        let a = [0.0; 6];
        let b = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let r = wilcoxon_signed_rank(&a, &b).unwrap();
        assert!(r.w.is_sign_positive());
        assert_eq!((r.w, r.w_plus, r.w_minus), (0.0, 21.0, 0.0));
        assert!(r.exact);
        assert_eq!(r.p_value, 2.0 / 64.0);
        assert_eq!(r.median_delta, 3.0);
    }

    #[test]
    fn normal_path_for_large_samples() {
        let a: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let b: Vec<f64> = a.iter().enumerate().map(|(i, x)| x + if i % 3 == 0 { -1.0 } else { 2.0 + i as f64 / 10.0 }).collect();
        let r = wilcoxon_signed_rank(&a, &b).unwrap();
        assert!(!r.exact);
        assert!(r.p_value < 0.01 && r.p_value > 0.0);
        let swapped = wilcoxon_signed_rank(&b, &a).unwrap();
        assert_eq!(r.p_value, swapped.p_value);
        assert_eq!(r.w_plus, swapped.w_minus);
    }
}
