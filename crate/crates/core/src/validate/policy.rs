use std::fmt;

use serde::{Deserialize, Serialize};

use super::{SimilarityScore, StructuralVerdict, ValidationError};

/// The balanced operating point.
pub const DEFAULT_TAU: f64 = 75.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RejectReason {
    BelowTau,
    Malformed,
    UncoveredSymbols,
    Tautology,
    Unparseable,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectReason::BelowTau => "BELOW_TAU",
            RejectReason::Malformed => "MALFORMED",
            RejectReason::UncoveredSymbols => "UNCOVERED_SYMBOLS",
            RejectReason::Tautology => "TAUTOLOGY",
            RejectReason::Unparseable => "UNPARSEABLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceDecision {
    pub accepted: bool,
    pub tau: f64,
    pub similarity: SimilarityScore,
    pub structural: Option<StructuralVerdict>,
    pub reject_reasons: Vec<RejectReason>,
}

fn check_tau(tau: f64) -> Result<(), ValidationError> {
    if (0.0..=100.0).contains(&tau) {
        Ok(())
    } else {
        Err(ValidationError::TauOutOfRange(tau))
    }
}

/// Accepts iff `similarity ≥ tau` and the structural verdict is clean.
/// Every failed gate is listed in `reject_reasons`.
pub fn accept(
    similarity: SimilarityScore,
    structural: &StructuralVerdict,
    tau: f64,
) -> Result<AcceptanceDecision, ValidationError> {
    check_tau(tau)?;
    let mut reasons = Vec::new();
    if similarity.value() < tau {
        reasons.push(RejectReason::BelowTau);
    }
    if !structural.well_formed {
        reasons.push(RejectReason::Malformed);
    }
    if !structural.symbol_coverage_ok {
        reasons.push(RejectReason::UncoveredSymbols);
    }
    if !structural.tautological_clauses.is_empty() {
        reasons.push(RejectReason::Tautology);
    }
    Ok(AcceptanceDecision {
        accepted: reasons.is_empty(),
        tau,
        similarity,
        structural: Some(structural.clone()),
        reject_reasons: reasons,
    })
}

/// Decision for an item whose formula or reconstruction could not be read:
/// score 0, rejected.
pub fn reject_unparseable(tau: f64) -> Result<AcceptanceDecision, ValidationError> {
    check_tau(tau)?;
    Ok(AcceptanceDecision {
        accepted: false,
        tau,
        similarity: SimilarityScore::ZERO,
        structural: None,
        reject_reasons: vec![RejectReason::Unparseable],
    })
}
