use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    build_nl2pl_prompt, build_pl2nl_prompt, extract_mapping_and_formula, Exchange,
    FormalizeRequest, PromptBundle, Translator, TranslatorError, TranslatorOutput,
};
use crate::formula::VarMap;

/// Decoding temperature. Fixed; not configurable.
pub const TEMPERATURE: f64 = 0.0;

/// Chat-completion endpoint settings. The credential itself is never stored
/// here, only the name of the environment variable that holds it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LlmConfig {
    pub endpoint_url: String,
    pub model_name: String,
    pub timeout_secs: f64,
    pub max_retries: u32,
    pub api_key_env_var: String,
    pub backoff_base_ms: u64,
    pub backoff_max_ms: u64,
}

impl Default for LlmConfig {
    fn default() -> Self {
        LlmConfig {
            endpoint_url: "https://api.openai.com/v1/chat/completions".into(),
            model_name: "gpt-4o-mini".into(),
            timeout_secs: 60.0,
            max_retries: 3,
            api_key_env_var: "OPENAI_API_KEY".into(),
            backoff_base_ms: 500,
            backoff_max_ms: 8_000,
        }
    }
}

impl LlmConfig {
    pub fn temperature(&self) -> f64 {
        TEMPERATURE
    }

    fn backoff(&self, retry: u32) -> Duration {
        let factor = 1u64.checked_shl(retry.min(30)).unwrap_or(u64::MAX);
        Duration::from_millis(self.backoff_base_ms.saturating_mul(factor).min(self.backoff_max_ms))
    }
}

/// Result of [`call_llm`]: the parsed output plus the exact wire bodies.
#[derive(Debug, Clone, PartialEq)]
pub struct LlmCall {
    pub output: TranslatorOutput,
    pub request_body: String,
    pub response_body: String,
    pub attempts: u32,
}

/// Builds the request body: `{model, temperature, messages: [system, user]}`.
pub fn request_body(config: &LlmConfig, prompt: &PromptBundle) -> String {
    json!({
        "model": config.model_name,
        "temperature": TEMPERATURE,
        "messages": [
            {"role": "system", "content": prompt.system_text},
            {"role": "user", "content": prompt.user_text},
        ],
    })
    .to_string()
}

enum Attempt {
    Done(u16, String),
    Transient(String),
}

fn send(client: &reqwest::blocking::Client, config: &LlmConfig, key: &str, body: &str) -> Attempt {
    let sent = client
        .post(&config.endpoint_url)
        .bearer_auth(key)
        .header(reqwest::header::CONTENT_TYPE, "application/json")
        .body(body.to_string())
        .send();
    let response = match sent {
        Ok(r) => r,
        Err(e) => return Attempt::Transient(e.to_string()),
    };
    let status = response.status().as_u16();
    match response.text() {
        Ok(text) if status == 429 || status >= 500 => Attempt::Transient(format!("HTTP {status}: {text}")),
        Ok(text) => Attempt::Done(status, text),
        Err(e) => Attempt::Transient(e.to_string()),
    }
}

/// Sends one chat-completion request at temperature 0.
///
/// Transport failures, timeouts, HTTP 429 and 5xx are retried with
/// exponential backoff up to `max_retries` times. Authentication failures,
/// other HTTP errors and malformed responses are returned immediately.
pub fn call_llm(config: &LlmConfig, prompt: &PromptBundle) -> Result<LlmCall, TranslatorError> {
    call_llm_with(&build_client(config)?, config, prompt)
}

fn build_client(config: &LlmConfig) -> Result<reqwest::blocking::Client, TranslatorError> {
    reqwest::blocking::Client::builder()
        .timeout(Duration::from_secs_f64(config.timeout_secs.max(0.001)))
        .build()
        .map_err(|e| TranslatorError::Transport {
            attempts: 0,
            message: e.to_string(),
        })
}

fn call_llm_with(
    client: &reqwest::blocking::Client,
    config: &LlmConfig,
    prompt: &PromptBundle,
) -> Result<LlmCall, TranslatorError> {
    let key = match std::env::var(&config.api_key_env_var) {
        Ok(k) if !k.trim().is_empty() => k,
        _ => {
            return Err(TranslatorError::Auth(format!(
                "environment variable {} is not set",
                config.api_key_env_var
            )))
        }
    };
    let body = request_body(config, prompt);
    let started = Instant::now();
    let mut attempts = 0;
    let (status, text) = loop {
        attempts += 1;
        match send(client, config, &key, &body) {
            Attempt::Done(status, text) => break (status, text),
            Attempt::Transient(message) if attempts > config.max_retries => {
                return Err(TranslatorError::Transport { attempts, message })
            }
            Attempt::Transient(_) => std::thread::sleep(config.backoff(attempts - 1)),
        }
    };
    let latency_s = started.elapsed().as_secs_f64();
    match status {
        200..=299 => {}
        401 | 403 => return Err(TranslatorError::Auth(format!("HTTP {status}: {text}"))),
        _ => return Err(TranslatorError::Http { status, body: text }),
    }
    let output = parse_response(&text, latency_s)?;
    Ok(LlmCall {
        output,
        request_body: body,
        response_body: text,
        attempts,
    })
}

/// Reads `choices[0].message.content` and `usage.*_tokens`.
fn parse_response(text: &str, latency_s: f64) -> Result<TranslatorOutput, TranslatorError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| TranslatorError::Schema(format!("not JSON: {e}")))?;
    let content = value
        .pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .ok_or_else(|| TranslatorError::Schema("missing choices[0].message.content".into()))?;
    let usage = |field: &str| value.pointer(&format!("/usage/{field}")).and_then(Value::as_u64);
    Ok(TranslatorOutput {
        raw_text: content.to_string(),
        extracted_formula: None,
        extracted_mapping: None,
        latency_s,
        prompt_tokens: usage("prompt_tokens"),
        completion_tokens: usage("completion_tokens"),
        total_tokens: usage("total_tokens"),
    })
}

/// [`Translator`] backed by a chat-completion endpoint. One HTTP client is
/// shared by all calls.
pub struct HttpTranslator {
    config: LlmConfig,
    client: reqwest::blocking::Client,
}

impl HttpTranslator {
    pub fn new(config: LlmConfig) -> Result<Self, TranslatorError> {
        let client = build_client(&config)?;
        Ok(HttpTranslator { config, client })
    }

    pub fn config(&self) -> &LlmConfig {
        &self.config
    }

    fn exchange(&self, prompt: PromptBundle) -> Result<Exchange, TranslatorError> {
        let call = call_llm_with(&self.client, &self.config, &prompt)?;
        Ok(Exchange {
            prompt,
            output: call.output,
            request_body: Some(call.request_body),
            response_body: Some(call.response_body),
        })
    }
}

impl Translator for HttpTranslator {
    fn formalize(&self, request: &FormalizeRequest<'_>) -> Result<Exchange, TranslatorError> {
        let prompt = build_nl2pl_prompt(request.scenario, request.mapping, request.conditions)?;
        let mut exchange = self.exchange(prompt)?;
        let (mapping, formula) = extract_mapping_and_formula(&exchange.output.raw_text);
        exchange.output.extracted_mapping = mapping;
        exchange.output.extracted_formula = formula;
        Ok(exchange)
    }

    fn reconstruct(&self, mapping: &VarMap, formula: &str) -> Result<Exchange, TranslatorError> {
        self.exchange(build_pl2nl_prompt(mapping, formula)?)
    }
}
