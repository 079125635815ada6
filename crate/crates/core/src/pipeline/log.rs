use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::{sha256_hex, PipelineError};
use crate::translate::Exchange;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LogStage {
    Stage1,
    Stage2,
    Stage3,
}

/// One JSON line of the artifact log.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ArtifactRecord {
    pub item_id: String,
    pub stage: Option<LogStage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prompt_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prompt_system: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prompt_user: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub request_body: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub response_text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latency_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prompt_tokens: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completion_tokens: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_tokens: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cnf_dimacs_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timestamp: String,
}

impl ArtifactRecord {
    pub fn new(item_id: &str, stage: LogStage) -> Self {
        ArtifactRecord {
            item_id: item_id.to_string(),
            stage: Some(stage),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            ..Default::default()
        }
    }

    pub fn with_exchange(mut self, exchange: &Exchange) -> Self {
        let out = &exchange.output;
        self.prompt_sha256 = Some(exchange.prompt.sha256());
        self.prompt_system = Some(exchange.prompt.system_text.clone());
        self.prompt_user = Some(exchange.prompt.user_text.clone());
        self.request_body = exchange.request_body.clone();
        self.response_text = Some(out.raw_text.clone());
        self.latency_s = Some(out.latency_s);
        self.prompt_tokens = out.prompt_tokens;
        self.completion_tokens = out.completion_tokens;
        self.total_tokens = out.total_tokens;
        self.formula = out.extracted_formula.clone();
        self
    }

    pub fn with_dimacs(mut self, formula: &str, dimacs: &str) -> Self {
        self.formula = Some(formula.to_string());
        self.cnf_dimacs_sha256 = Some(sha256_hex(dimacs.as_bytes()));
        self
    }

    pub fn with_error(mut self, error: impl ToString) -> Self {
        self.error = Some(error.to_string());
        self
    }
}

/// Append-only JSONL sink. Writers from any thread are serialized through
/// one lock and every record is flushed as a whole line.
pub struct ArtifactLog {
    sink: Mutex<Box<dyn Write + Send>>,
}

impl std::fmt::Debug for ArtifactLog {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ArtifactLog").finish_non_exhaustive()
    }
}

impl ArtifactLog {
    /// Opens `path` for appending, creating it if needed.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, PipelineError> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Self::from_writer(file))
    }

    pub fn from_writer(writer: impl Write + Send + 'static) -> Self {
        ArtifactLog {
            sink: Mutex::new(Box::new(writer)),
        }
    }

    pub fn append(&self, record: &ArtifactRecord) -> Result<(), PipelineError> {
        let mut line = serde_json::to_string(record)?;
        line.push('\n');
        let mut sink = self.sink.lock().unwrap_or_else(|e| e.into_inner());
        sink.write_all(line.as_bytes())?;
        sink.flush()?;
        Ok(())
    }
}

/// Parses a JSONL artifact log; blank lines are skipped.
pub fn read_log<R: Read>(input: R) -> Result<Vec<ArtifactRecord>, PipelineError> {
    let mut records = Vec::new();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line)
            .map_err(|e| PipelineError::DatasetFormat(format!("log line {}: {e}", i + 1)))?;
        records.push(record);
    }
    Ok(records)
}

pub fn read_log_file(path: impl AsRef<Path>) -> Result<Vec<ArtifactRecord>, PipelineError> {
    read_log(File::open(path)?)
}
