// Building NL→PL requests for a chat-completion endpoint.
//
// Without arguments this only prints the prompt and request body. With
// `--live` it sends the request, reading the key from the variable named by
// `api_key_env_var` (OPENAI_API_KEY by default).
//
// ```text
// cargo run --example llm_client -- --live
// ```

use std::error::Error;

use veritrans::formula::VarMap;
use veritrans::translate::{
    build_nl2pl_prompt, extract_mapping_and_formula, FormalizeRequest, HttpTranslator, LlmConfig, Translator,
};

const CONDITIONS: &str = "If the temperature sensor detects a reading above the threshold and the cooling \
                          system is offline, then an emergency shutdown must be triggered or an alarm must sound.";

fn mapping() -> VarMap {
    VarMap::parse("T: temperature above threshold\nC: cooling offline\nS: emergency shutdown\nA: alarm sounds")
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let config = LlmConfig::default();
    let prompt = build_nl2pl_prompt("Reactor cooling loop", &mapping(), CONDITIONS)?;
    println!("--- system ---\n{}", prompt.system_text);
    println!("--- user ---\n{}", prompt.user_text);
    println!("--- request ---\n{}", veritrans::translate::request_body(&config, &prompt));

    // what extraction does with a typical answer
    let answer = "**Mapping:**\n- T: temperature above threshold\n- C: cooling offline\n\n**Formula:** `(T & C) -> (S | A)`";
    println!("{:?}", extract_mapping_and_formula(answer));
    Ok(())
}

#[allow(dead_code)]
fn live() -> Result<(), Box<dyn Error>> {
    let translator = HttpTranslator::new(LlmConfig::default())?;
    let m = mapping();
    let request = FormalizeRequest {
        id: "demo",
        scenario: "Reactor cooling loop",
        mapping: &m,
        conditions: CONDITIONS,
    };
    let exchange = translator.formalize(&request)?;
    println!("{}", exchange.output.raw_text);
    println!("formula: {:?}", exchange.output.extracted_formula);
    println!("latency {:.2}s, tokens {:?}", exchange.output.latency_s, exchange.output.total_tokens);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()?;
    if std::env::args().any(|a| a == "--live") {
        live()?;
    }
    Ok(())
}
