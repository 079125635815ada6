// The τ acceptance policy: similarity plus structural checks.

use std::collections::BTreeSet;
use std::error::Error;

use veritrans::cnf::compile;
use veritrans::formula::parse;
use veritrans::validate::{accept, reject_unparseable, structural_check, SimilarityScore, DEFAULT_TAU};

pub fn run() -> Result<(), Box<dyn Error>> {
    let declared: BTreeSet<String> = ["a", "b", "c"].map(String::from).into();
    let cases = [("(a -> b) & c", 88.0), ("(a -> b) & c", 61.5), ("a | zz", 95.0), ("a & !a", 99.0)];
    for (formula, similarity) in cases {
        let (ast, vars) = parse(formula)?;
        let cnf = compile(&ast)?;
        let verdict = structural_check(&cnf, &vars, &declared);
        let decision = accept(SimilarityScore::new(similarity), &verdict, DEFAULT_TAU)?;
        let reasons: Vec<String> = decision.reject_reasons.iter().map(|r| r.to_string()).collect();
        println!(
            "{formula:<14} sim {similarity:>5}  accepted {:<5} {}",
            decision.accepted,
            reasons.join(",")
        );
    }
    println!("{:?}", reject_unparseable(DEFAULT_TAU)?.reject_reasons);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
