// PL→NL reconstruction without a model, scored against the original text.

use std::error::Error;

use veritrans::formula::{parse, VarMap};
use veritrans::translate::{extract_reconstruction, verbalize_offline, OfflineTranslator, Translator};
use veritrans::validate::{roundtrip_similarity, tfidf_vectors};

pub fn run() -> Result<(), Box<dyn Error>> {
    let mapping = VarMap::parse(
        "T: the temperature sensor detects a reading above the threshold\n\
         C: the cooling system is offline\n\
         S: an emergency shutdown must be triggered\n\
         A: an alarm must sound",
    );
    let original = "If the temperature sensor detects a reading above the threshold and the cooling \
                    system is offline, then an emergency shutdown must be triggered or an alarm must sound.";

    // bag of words: swapping connectives leaves the score at 100
    for formula in ["(T & C) -> (S | A)", "(T | C) -> (S & A)", "T -> A"] {
        let (ast, _) = parse(formula)?;
        let text = verbalize_offline(&ast, &mapping)?;
        let score = roundtrip_similarity(original, &text)?;
        println!("{formula:<22} {score:>6}  {text}");
    }

    // the same thing through the Translator interface
    let exchange = OfflineTranslator::new().reconstruct(&mapping, "!T | A")?;
    println!("prompt sha256 {}", exchange.prompt.sha256());
    println!("{}", exchange.output.raw_text.trim_end());
    println!("extracted: {:?}", extract_reconstruction(&exchange.output.raw_text));

    let (a, b) = tfidf_vectors("the alarm must sound", "the alarm will sound")?;
    println!("tf-idf a = {a:?}");
    println!("tf-idf b = {b:?}");
    println!("score {}", roundtrip_similarity("the alarm must sound", "the alarm will sound")?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
