use rayon::prelude::*;
use serde::Serialize;

use super::log::{ArtifactLog, ArtifactRecord, LogStage};
use super::rows::{SpecRecord, StageRow, Status};
use super::{compile_formula, worker_pool, PipelineError};
use crate::sat::solve;
use crate::translate::{
    extract_reconstruction, FormalizeRequest, OfflineTranslator, Translator, TranslatorError,
};
use crate::validate::{roundtrip_similarity_with, TfidfConfig};

/// Settings shared by the stage runners.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub workers: usize,
    pub tfidf: TfidfConfig,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: 4,
            tfidf: TfidfConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StageSummary {
    pub total: usize,
    pub ok: usize,
    pub skipped_empty: usize,
    pub unparseable: usize,
    pub errors: usize,
}

impl StageSummary {
    pub fn of(rows: &[StageRow]) -> Self {
        let mut s = StageSummary {
            total: rows.len(),
            ..Default::default()
        };
        for row in rows {
            match row.status {
                Status::Ok => s.ok += 1,
                Status::SkippedEmpty => s.skipped_empty += 1,
                Status::Unparseable => s.unparseable += 1,
                Status::Error(_) => s.errors += 1,
            }
        }
        s
    }
}

fn log_record(log: Option<&ArtifactLog>, record: impl FnOnce() -> ArtifactRecord) -> Result<(), PipelineError> {
    match log {
        Some(log) => log.append(&record()),
        None => Ok(()),
    }
}

/// Runs `f` over `items` on a pool of `workers` threads, keeping input order.
fn par_map<T, U, F>(items: Vec<T>, workers: usize, f: F) -> Result<Vec<U>, PipelineError>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Result<U, PipelineError> + Send + Sync,
{
    worker_pool(workers)?.install(|| items.into_par_iter().map(f).collect())
}

/// NL→PL over a dataset. Per-item failures end up in `status`; only log
/// I/O errors abort the batch.
pub fn run_stage1(
    records: &[SpecRecord],
    translator: &dyn Translator,
    workers: usize,
    log: Option<&ArtifactLog>,
) -> Result<Vec<StageRow>, PipelineError> {
    par_map(records.iter().collect(), workers, |record| {
        let mut row = StageRow::from(record);
        let request = FormalizeRequest {
            id: &record.id,
            scenario: &record.scenario,
            mapping: &record.variable_mapping,
            conditions: &record.conditions,
        };
        match translator.formalize(&request) {
            Ok(exchange) => {
                let out = &exchange.output;
                row.latency_s = Some(out.latency_s);
                row.prompt_tokens = out.prompt_tokens;
                row.completion_tokens = out.completion_tokens;
                row.total_tokens = out.total_tokens;
                row.generated_mapping = out.extracted_mapping.as_ref().map(|m| m.to_json()).unwrap_or_default();
                match &out.extracted_formula {
                    Some(f) => row.generated_formula = f.clone(),
                    None => row.status = Status::Unparseable,
                }
                log_record(log, || ArtifactRecord::new(&record.id, LogStage::Stage1).with_exchange(&exchange))?;
            }
            Err(e) => {
                row.status = Status::error(&e);
                log_record(log, || ArtifactRecord::new(&record.id, LogStage::Stage1).with_error(&e))?;
            }
        }
        Ok(row)
    })
}

/// PL→NL reconstruction and similarity for every `OK` row with a formula.
pub fn run_stage2(
    rows: Vec<StageRow>,
    translator: &dyn Translator,
    options: &RunOptions,
    log: Option<&ArtifactLog>,
) -> Result<Vec<StageRow>, PipelineError> {
    par_map(rows, options.workers, |mut row| {
        if !row.status.is_ok() {
            return Ok(row);
        }
        if row.generated_formula.trim().is_empty() {
            row.status = Status::SkippedEmpty;
            return Ok(row);
        }
        let mapping = row.merged_mapping();
        match translator.reconstruct(&mapping, &row.generated_formula) {
            Ok(exchange) => {
                let reconstruction = extract_reconstruction(&exchange.output.raw_text);
                let score = reconstruction
                    .as_deref()
                    .map(|text| roundtrip_similarity_with(&row.conditions, text, &options.tfidf));
                row.reconstructed_text = reconstruction.clone().unwrap_or_default();
                match score {
                    Some(Ok(s)) => row.similarity = Some(s.value()),
                    _ => {
                        row.similarity = Some(0.0);
                        row.status = Status::Unparseable;
                    }
                }
                log_record(log, || ArtifactRecord::new(&row.id, LogStage::Stage2).with_exchange(&exchange))?;
            }
            Err(e) => {
                row.status = match e {
                    TranslatorError::Formula(_) => {
                        row.similarity = Some(0.0);
                        Status::Unparseable
                    }
                    _ => Status::error(&e),
                };
                log_record(log, || ArtifactRecord::new(&row.id, LogStage::Stage2).with_error(&e))?;
            }
        }
        Ok(row)
    })
}

/// PL→CNF→SAT for every row with a non-empty formula. Compilation
/// failures mark an `OK` row as `ERROR`; earlier statuses are kept.
pub fn run_stage3(
    rows: Vec<StageRow>,
    workers: usize,
    log: Option<&ArtifactLog>,
) -> Result<Vec<StageRow>, PipelineError> {
    par_map(rows, workers, |mut row| {
        let formula = row.generated_formula.trim().to_string();
        if formula.is_empty() {
            if row.status.is_ok() {
                row.status = Status::SkippedEmpty;
            }
            return Ok(row);
        }
        let outcome = compile_formula(&formula).and_then(|c| Ok((solve(&c.cnf)?.status, c.dimacs)));
        match outcome {
            Ok((status, dimacs)) => {
                row.pred_from_script = Some(status);
                log_record(log, || ArtifactRecord::new(&row.id, LogStage::Stage3).with_dimacs(&formula, &dimacs))?;
                row.cnf_dimacs = dimacs;
            }
            Err(e) => {
                row.pred_from_script = None;
                row.cnf_dimacs.clear();
                if row.status.is_ok() {
                    row.status = Status::error(&e);
                }
                log_record(log, || {
                    let mut r = ArtifactRecord::new(&row.id, LogStage::Stage3).with_error(&e);
                    r.formula = Some(formula.clone());
                    r
                })?;
            }
        }
        Ok(row)
    })
}

/// All three stages back to back.
pub fn run_all(
    records: &[SpecRecord],
    translator: &dyn Translator,
    options: &RunOptions,
    log: Option<&ArtifactLog>,
) -> Result<Vec<StageRow>, PipelineError> {
    let rows = run_stage1(records, translator, options.workers, log)?;
    let rows = run_stage2(rows, translator, options, log)?;
    run_stage3(rows, options.workers, log)
}

/// An offline translator that answers each item with its gold formula and
/// input mapping.
pub fn offline_translator_from_gold(records: &[SpecRecord]) -> OfflineTranslator {
    records
        .iter()
        .filter_map(|r| Some((r, r.gold_formula.as_deref()?)))
        .fold(OfflineTranslator::new(), |t, (r, gold)| {
            t.with_response(&r.id, OfflineTranslator::formatted_response(&r.variable_mapping, gold))
        })
}
