//! The two translation stages (NL→PL and PL→NL) behind one [`Translator`]
//! interface, with an HTTP chat-completion backend and a deterministic
//! offline backend.

mod extract;
mod http;
mod offline;
mod prompts;

pub use extract::{extract_mapping_and_formula, extract_reconstruction, RECONSTRUCTION_ANCHOR};
pub use http::{call_llm, request_body, HttpTranslator, LlmCall, LlmConfig, TEMPERATURE};
pub use offline::{verbalize_offline, OfflineTranslator};
pub use prompts::{build_nl2pl_prompt, build_pl2nl_prompt, PromptBundle, Stage, PROMPT_VERSION};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{FormulaError, VarMap};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TranslatorError {
    #[error("{0} is empty")]
    EmptyInput(&'static str),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("no description for variables: {}", .0.join(", "))]
    MissingAlias(Vec<String>),
    #[error("credential unavailable: {0}")]
    Auth(String),
    #[error("transport failed after {attempts} attempt(s): {message}")]
    Transport { attempts: u32, message: String },
    #[error("endpoint answered HTTP {status}: {body}")]
    Http { status: u16, body: String },
    #[error("unexpected response shape: {0}")]
    Schema(String),
}

/// What a model produced for one prompt.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TranslatorOutput {
    pub raw_text: String,
    pub extracted_formula: Option<String>,
    pub extracted_mapping: Option<VarMap>,
    pub latency_s: f64,
    /// Provider-reported counts; absent when the provider did not report them.
    pub prompt_tokens: Option<u64>,
    pub completion_tokens: Option<u64>,
    pub total_tokens: Option<u64>,
}

/// One prompt/response round, with the wire bodies when there were any.
#[derive(Debug, Clone, PartialEq)]
pub struct Exchange {
    pub prompt: PromptBundle,
    pub output: TranslatorOutput,
    pub request_body: Option<String>,
    pub response_body: Option<String>,
}

/// Input to the NL→PL stage.
#[derive(Debug, Clone, Copy)]
pub struct FormalizeRequest<'a> {
    pub id: &'a str,
    pub scenario: &'a str,
    pub mapping: &'a VarMap,
    pub conditions: &'a str,
}

pub trait Translator: Send + Sync {
    /// NL→PL. The returned output carries the extracted formula and mapping
    /// (either may be absent when the response could not be read).
    fn formalize(&self, request: &FormalizeRequest<'_>) -> Result<Exchange, TranslatorError>;

    /// PL→NL. The reconstruction is read from the raw text with
    /// [`extract_reconstruction`].
    fn reconstruct(&self, mapping: &VarMap, formula: &str) -> Result<Exchange, TranslatorError>;
}
