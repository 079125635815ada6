use std::path::Path;

use serde::{Deserialize, Serialize};

use super::rows::ColumnMap;
use super::PipelineError;
use crate::stats::DEFAULT_SEED;
use crate::translate::LlmConfig;
use crate::validate::{TfidfConfig, DEFAULT_TAU};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TranslatorKind {
    /// Canned gold-formula answers and the template verbalizer.
    #[default]
    Offline,
    Http,
}

/// TOML run configuration. Every key is optional:
///
/// ```toml
/// tau = 75.0
/// workers = 4
/// seed = 42
/// translator = "http"          # or "offline"
///
/// [llm]
/// endpoint_url = "https://api.openai.com/v1/chat/completions"
/// model_name = "gpt-4o-mini"
/// timeout_secs = 60.0
/// max_retries = 3
/// api_key_env_var = "OPENAI_API_KEY"
///
/// [columns]                    # canonical name = dataset header
/// conditions = "requirement"
///
/// [tfidf]
/// remove_stopwords = false
/// ```
///
/// Unknown keys are rejected, which also keeps a `temperature` key out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub tau: f64,
    pub workers: usize,
    pub seed: u64,
    pub translator: TranslatorKind,
    pub llm: LlmConfig,
    pub columns: ColumnMap,
    pub tfidf: TfidfConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            tau: DEFAULT_TAU,
            workers: 4,
            seed: DEFAULT_SEED,
            translator: TranslatorKind::default(),
            llm: LlmConfig::default(),
            columns: ColumnMap::default(),
            tfidf: TfidfConfig::default(),
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self, PipelineError> {
        let config: PipelineConfig = toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
        if !(0.0..=100.0).contains(&config.tau) {
            return Err(PipelineError::Config(format!("tau {} is outside [0, 100]", config.tau)));
        }
        if config.workers == 0 {
            return Err(PipelineError::Config("workers must be at least 1".into()));
        }
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, PipelineError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        assert_eq!(PipelineConfig::from_toml("").unwrap(), PipelineConfig::default());
        let c = PipelineConfig::from_toml(
            "tau = 80\nworkers = 2\ntranslator = \"http\"\n[llm]\nmodel_name = \"m\"\n[columns]\nid = \"item\"\n",
        )
        .unwrap();
        assert_eq!((c.tau, c.workers, c.translator), (80.0, 2, TranslatorKind::Http));
        assert_eq!(c.llm.model_name, "m");
        assert_eq!(c.columns.0["id"], "item");
    }

    #[test]
    fn rejects_bad_values() {
        for bad in ["tau = 120", "workers = 0", "temperature = 0.2", "[llm]\ntemperature = 0.2", "api_key = \"sk\""] {
            assert!(matches!(PipelineConfig::from_toml(bad), Err(PipelineError::Config(_))), "{bad}");
        }
    }
}
