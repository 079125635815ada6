// Parsing formulas written in any of the accepted spellings.
//
// ```text
// cargo run --example parse_formula
// ```

use std::error::Error;

use veritrans::formula::{canonicalize_indexed_vars, normalize_symbols, parse, tokenize};

pub fn run() -> Result<(), Box<dyn Error>> {
    let inputs = [
        "(T & C) -> (S | A)",
        "¬p ∧ q → r",
        "(~x(0,0) V ~x(0,1) V x(0,2) V x(0,3))",
        "a <=> b && !c",
        "p -> q -> r",
    ];
    for text in inputs {
        let (ast, vars) = parse(text)?;
        println!("{text}");
        println!("  canonical  {ast}");
        println!("  variables  {vars:?}");
        println!("  depth {}, nodes {}", ast.depth(), ast.node_count());
    }

    // the cleanup passes on their own
    let raw = "~x( 1 ,2 ) V x(2,1)";
    let cleaned = normalize_symbols(&canonicalize_indexed_vars(raw));
    println!("{raw:?} -> {cleaned:?}");
    let kinds: Vec<String> = tokenize(&cleaned)?.iter().map(|t| t.to_string()).collect();
    println!("tokens: {}", kinds.join(" "));

    for bad in ["a &", "(a | b", "a b", "", "3x"] {
        println!("{bad:?}: {}", parse(bad).unwrap_err());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
