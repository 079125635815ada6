// Tseitin encoding and the DIMACS round trip.

use std::error::Error;

use veritrans::cnf::{compile, eliminate_connectives, parse_dimacs, to_dimacs, tseitin_cnf};
use veritrans::formula::parse;

pub fn run() -> Result<(), Box<dyn Error>> {
    let (ast, _) = parse("(T & C) -> (S | A)")?;
    let core = eliminate_connectives(&ast);
    println!("without -> and <->: {core}");

    let encoded = tseitin_cnf(&core)?;
    println!("{} clauses, {} auxiliaries, root {}", encoded.clauses.len(), encoded.aux_count, encoded.top);
    for clause in &encoded.clauses {
        let lits: Vec<String> = clause.iter().map(|l| l.to_string()).collect();
        println!("  ({})", lits.join(" | "));
    }

    let cnf = compile(&ast)?;
    let dimacs = to_dimacs(&cnf);
    print!("{dimacs}");

    let back = parse_dimacs(&dimacs)?;
    assert_eq!(back, cnf);
    println!("re-read: {} vars, {} clauses, symbol 1 = {:?}", back.num_vars(), back.num_clauses(), back.symbols().name(1));

    // foreign DIMACS without name comments still parses
    let plain = parse_dimacs("c generated elsewhere\np cnf 3 2\n1 -3 0\n2 3\n-1 0\n")?;
    println!("plain file: {:?}", plain.clauses());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
