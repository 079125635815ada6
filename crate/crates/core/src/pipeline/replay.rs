use std::path::Path;

use serde::Serialize;

use super::log::{read_log_file, ArtifactRecord, LogStage};
use super::{compile_formula, sha256_hex, PipelineError};

/// Regenerates the DIMACS bytes stage 3 produces for `formula`.
pub fn replay(formula: &str) -> Result<Vec<u8>, PipelineError> {
    Ok(compile_formula(formula)?.dimacs.into_bytes())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayMismatch {
    pub item_id: String,
    pub formula: String,
    pub logged_sha256: String,
    /// `None` when the formula no longer compiles.
    pub replayed_sha256: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub checked: usize,
    pub mismatches: Vec<ReplayMismatch>,
}

impl ReplayReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Replays every stage-3 record that carries a formula and a DIMACS hash.
pub fn replay_records(records: &[ArtifactRecord]) -> ReplayReport {
    let mut report = ReplayReport::default();
    for r in records.iter().filter(|r| r.stage == Some(LogStage::Stage3)) {
        let (Some(formula), Some(logged)) = (&r.formula, &r.cnf_dimacs_sha256) else {
            continue;
        };
        report.checked += 1;
        let replayed = replay(formula).ok().map(|bytes| sha256_hex(&bytes));
        if replayed.as_ref() != Some(logged) {
            report.mismatches.push(ReplayMismatch {
                item_id: r.item_id.clone(),
                formula: formula.clone(),
                logged_sha256: logged.clone(),
                replayed_sha256: replayed,
            });
        }
    }
    report
}

pub fn replay_log(path: impl AsRef<Path>) -> Result<ReplayReport, PipelineError> {
    Ok(replay_records(&read_log_file(path)?))
}
