//! Batch orchestration over CSV datasets: the three stages, the τ sweep,
//! correctness scoring, artifact logging and replay.

mod config;
mod log;
mod replay;
mod rows;
mod stages;
mod sweep;

pub use config::{PipelineConfig, TranslatorKind};
pub use log::{read_log, read_log_file, ArtifactLog, ArtifactRecord, LogStage};
pub use replay::{replay, replay_log, replay_records, ReplayMismatch, ReplayReport};
pub use rows::{read_dataset, read_rows, write_rows, ColumnMap, SpecRecord, StageRow, Status, STAGE_COLUMNS};
pub use stages::{
    offline_translator_from_gold, run_all, run_stage1, run_stage2, run_stage3, StageSummary,
    RunOptions,
};
pub use sweep::{score_correctness, tau_range, tau_sweep, Correctness, Gate, SweepPoint};

use std::collections::BTreeSet;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cnf::{compile, to_dimacs, CnfClauseSet, CompileError};
use crate::formula::{parse, Ast, FormulaError};
use crate::sat::SolveError;
use crate::stats::StatsError;
use crate::translate::TranslatorError;
use crate::validate::ValidationError;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("dataset format: {0}")]
    DatasetFormat(String),
    #[error("config: {0}")]
    Config(String),
    #[error("no rows to evaluate")]
    EmptyInput,
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Translator(#[from] TranslatorError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A formula taken through the deterministic part of stage 3.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledFormula {
    pub ast: Ast,
    pub variables: BTreeSet<String>,
    pub cnf: CnfClauseSet,
    pub dimacs: String,
}

impl CompiledFormula {
    pub fn dimacs_sha256(&self) -> String {
        sha256_hex(self.dimacs.as_bytes())
    }
}

/// canonicalize → normalize → parse → eliminate → Tseitin → integer map →
/// DIMACS. Pure: equal input text always yields equal bytes.
pub fn compile_formula(text: &str) -> Result<CompiledFormula, PipelineError> {
    let (ast, variables) = parse(text)?;
    let cnf = compile(&ast)?;
    let dimacs = to_dimacs(&cnf);
    Ok(CompiledFormula {
        ast,
        variables,
        cnf,
        dimacs,
    })
}

fn worker_pool(workers: usize) -> Result<rayon::ThreadPool, PipelineError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| PipelineError::Config(format!("worker pool: {e}")))
}
