use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PipelineError;
use crate::formula::VarMap;
use crate::sat::Satisfiability;

/// Per-row outcome. Written as `OK`, `SKIPPED_EMPTY`, `UNPARSEABLE` or
/// `ERROR: <detail>`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum Status {
    #[default]
    Ok,
    SkippedEmpty,
    Unparseable,
    Error(String),
}

impl Status {
    pub fn error(detail: impl fmt::Display) -> Self {
        Status::Error(detail.to_string().replace(['\r', '\n'], " "))
    }

    pub fn is_ok(&self) -> bool {
        *self == Status::Ok
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Ok => f.write_str("OK"),
            Status::SkippedEmpty => f.write_str("SKIPPED_EMPTY"),
            Status::Unparseable => f.write_str("UNPARSEABLE"),
            Status::Error(detail) => write!(f, "ERROR: {detail}"),
        }
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "" | "OK" => Ok(Status::Ok),
            "SKIPPED_EMPTY" => Ok(Status::SkippedEmpty),
            "UNPARSEABLE" => Ok(Status::Unparseable),
            "ERROR" => Ok(Status::Error(String::new())),
            other => match other.strip_prefix("ERROR:") {
                Some(detail) => Ok(Status::Error(detail.trim().to_string())),
                None => Err(format!("unknown status {other:?}")),
            },
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Status {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Empty cell → `None`; otherwise any spelling [`Satisfiability`] accepts.
fn label_opt<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Option<Satisfiability>, D::Error> {
    let s = Option::<String>::deserialize(deserializer)?.unwrap_or_default();
    if s.trim().is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(serde::de::Error::custom)
}

/// One dataset item, as read from the input CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecRecord {
    pub id: String,
    pub conditions: String,
    pub scenario: String,
    pub variable_mapping: VarMap,
    pub gold_label: Option<Satisfiability>,
    pub gold_formula: Option<String>,
}

/// One CSV row carried through the stages. Columns a stage has not filled
/// yet are empty.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StageRow {
    pub id: String,
    pub conditions: String,
    pub scenario: String,
    pub variable_mapping: String,
    #[serde(deserialize_with = "label_opt")]
    pub gold_label: Option<Satisfiability>,
    pub gold_formula: String,
    pub generated_formula: String,
    pub generated_mapping: String,
    pub latency_s: Option<f64>,
    pub prompt_tokens: Option<u64>,
    pub completion_tokens: Option<u64>,
    pub total_tokens: Option<u64>,
    pub reconstructed_text: String,
    pub similarity: Option<f64>,
    #[serde(deserialize_with = "label_opt")]
    pub pred_from_script: Option<Satisfiability>,
    pub cnf_dimacs: String,
    pub status: Status,
}

/// Column order of every CSV this crate writes.
pub const STAGE_COLUMNS: &[&str] = &[
    "id",
    "conditions",
    "scenario",
    "variable_mapping",
    "gold_label",
    "gold_formula",
    "generated_formula",
    "generated_mapping",
    "latency_s",
    "prompt_tokens",
    "completion_tokens",
    "total_tokens",
    "reconstructed_text",
    "similarity",
    "pred_from_script",
    "cnf_dimacs",
    "status",
];

impl From<&SpecRecord> for StageRow {
    fn from(r: &SpecRecord) -> Self {
        StageRow {
            id: r.id.clone(),
            conditions: r.conditions.clone(),
            scenario: r.scenario.clone(),
            variable_mapping: if r.variable_mapping.is_empty() {
                String::new()
            } else {
                r.variable_mapping.to_json()
            },
            gold_label: r.gold_label,
            gold_formula: r.gold_formula.clone().unwrap_or_default(),
            ..Default::default()
        }
    }
}

impl StageRow {
    pub fn input_mapping(&self) -> VarMap {
        VarMap::parse(&self.variable_mapping)
    }

    pub fn output_mapping(&self) -> VarMap {
        VarMap::parse(&self.generated_mapping)
    }

    /// Input mapping overlaid with the generated one; generated entries win.
    pub fn merged_mapping(&self) -> VarMap {
        self.input_mapping().merged_with(&self.output_mapping())
    }

    /// The vocabulary the formula is checked against: the input mapping's
    /// names, or the generated mapping's when no input mapping was given.
    pub fn declared_vars(&self) -> std::collections::BTreeSet<String> {
        let input = self.input_mapping();
        let source = if input.is_empty() { self.output_mapping() } else { input };
        source.names().map(str::to_string).collect()
    }

    /// Whether the prediction matches the gold label. `None` without a gold
    /// label; a missing prediction counts as wrong.
    pub fn is_correct(&self) -> Option<bool> {
        let gold = self.gold_label?;
        Some(self.pred_from_script == Some(gold))
    }
}

/// Renames dataset columns onto [`StageRow`] names. Keys are canonical
/// names, values the header used by the dataset; unlisted columns are
/// expected under their canonical name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColumnMap(pub BTreeMap<String, String>);

impl ColumnMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, canonical: &str, dataset_column: &str) -> Self {
        self.0.insert(canonical.to_string(), dataset_column.to_string());
        self
    }

    fn validate(&self) -> Result<(), PipelineError> {
        match self.0.keys().find(|k| !STAGE_COLUMNS.contains(&k.as_str())) {
            Some(k) => Err(PipelineError::Config(format!("unknown column {k:?} in column map"))),
            None => Ok(()),
        }
    }

    fn canonical<'a>(&'a self, header: &'a str) -> &'a str {
        self.0
            .iter()
            .find(|(_, v)| v.as_str() == header)
            .map_or(header, |(k, _)| k.as_str())
    }
}

fn reader_with_columns<R: Read>(
    input: R,
    columns: &ColumnMap,
) -> Result<(csv::Reader<R>, Vec<String>), PipelineError> {
    columns.validate()?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers: csv::StringRecord = reader
        .headers()?
        .iter()
        .map(|h| columns.canonical(h.trim_start_matches('\u{feff}').trim()).to_string())
        .collect();
    let names = headers.iter().map(str::to_string).collect();
    reader.set_headers(headers);
    Ok((reader, names))
}

/// Reads stage rows. Missing columns come back empty, extra ones are ignored.
pub fn read_rows<R: Read>(input: R, columns: &ColumnMap) -> Result<Vec<StageRow>, PipelineError> {
    let (mut reader, _) = reader_with_columns(input, columns)?;
    reader
        .deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| PipelineError::DatasetFormat(format!("row {}: {e}", i + 1))))
        .collect()
}

pub fn write_rows<W: Write>(output: W, rows: &[StageRow]) -> Result<(), PipelineError> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(output);
    writer.write_record(STAGE_COLUMNS)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a dataset. `id` and `conditions` columns are required and ids
/// must be unique; everything else is optional.
pub fn read_dataset<R: Read>(input: R, columns: &ColumnMap) -> Result<Vec<SpecRecord>, PipelineError> {
    let (mut reader, names) = reader_with_columns(input, columns)?;
    for required in ["id", "conditions"] {
        if !names.iter().any(|n| n == required) {
            return Err(PipelineError::DatasetFormat(format!("missing column {required:?}")));
        }
    }
    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for (i, row) in reader.deserialize::<StageRow>().enumerate() {
        let row = row.map_err(|e| PipelineError::DatasetFormat(format!("row {}: {e}", i + 1)))?;
        if !seen.insert(row.id.clone()) {
            return Err(PipelineError::DatasetFormat(format!("duplicate id {:?}", row.id)));
        }
        let gold_formula = (!row.gold_formula.trim().is_empty()).then(|| row.gold_formula.clone());
        records.push(SpecRecord {
            variable_mapping: row.input_mapping(),
            id: row.id,
            conditions: row.conditions,
            scenario: row.scenario,
            gold_label: row.gold_label,
            gold_formula,
        });
    }
    Ok(records)
}
