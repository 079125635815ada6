// DPLL on compiled formulas, checked against the truth-table oracle.

use std::error::Error;

use veritrans::cnf::{compile, CnfClauseSet};
use veritrans::formula::parse;
use veritrans::sat::{check_model, count_models, solve, solve_with_budget, truth_table_oracle};

fn pigeonhole(holes: i32) -> CnfClauseSet {
    let pigeons = holes + 1;
    let var = |p: i32, h: i32| p * holes + h + 1;
    let mut clauses: Vec<Vec<i32>> = (0..pigeons).map(|p| (0..holes).map(|h| var(p, h)).collect()).collect();
    for h in 0..holes {
        for p in 0..pigeons {
            for q in p + 1..pigeons {
                clauses.push(vec![-var(p, h), -var(q, h)]);
            }
        }
    }
    CnfClauseSet::new(clauses, (pigeons * holes) as usize)
}

pub fn run() -> Result<(), Box<dyn Error>> {
    for text in ["(a | !a)", "(a & !a)", "(p -> q) & p & !q", "(x <-> y) & (y <-> !x)", "(a | b) & (!a | c)"] {
        let (ast, _) = parse(text)?;
        let cnf = compile(&ast)?;
        let result = solve(&cnf)?;
        println!(
            "{text:<28} {}  (oracle {}, {} models, {} decisions)",
            result.status,
            truth_table_oracle(&ast)?,
            count_models(&ast)?,
            result.decisions
        );
        if let Some(model) = &result.model {
            assert!(check_model(&cnf, model));
            let named: Vec<String> = cnf
                .symbols()
                .iter()
                .filter(|(_, name)| !name.starts_with("_aux_"))
                .map(|(id, name)| format!("{name}={}", model.value(id).unwrap_or(false)))
                .collect();
            println!("    {}", named.join(" "));
        }
    }

    let hard = pigeonhole(5);
    let result = solve(&hard)?;
    println!("pigeonhole 6->5: {} after {} decisions", result.status, result.decisions);
    println!("with a budget of 10: {}", solve_with_budget(&hard, 10).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
