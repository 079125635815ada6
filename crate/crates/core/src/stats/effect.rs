use serde::{Deserialize, Serialize};

use super::StatsError;

/// `(#{a_i > b_j} − #{a_i < b_j}) / (|a|·|b|)`, computed over all pairs.
pub fn cliffs_delta(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    let mut dominance: i64 = 0;
    for x in a {
        for y in b {
            if x > y {
                dominance += 1;
            } else if x < y {
                dominance -= 1;
            }
        }
    }
    Ok(dominance as f64 / (a.len() * b.len()) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EffectMagnitude {
    Negligible,
    Small,
    Medium,
    Large,
}

/// Conventional labels: |δ| < 0.147 negligible, < 0.33 small, < 0.474
/// medium, otherwise large.
pub fn cliffs_magnitude(delta: f64) -> EffectMagnitude {
    match delta.abs() {
        d if d < 0.147 => EffectMagnitude::Negligible,
        d if d < 0.33 => EffectMagnitude::Small,
        d if d < 0.474 => EffectMagnitude::Medium,
        _ => EffectMagnitude::Large,
    }
}
