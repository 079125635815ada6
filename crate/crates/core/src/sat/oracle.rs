use super::{Satisfiability, SolveError};
use crate::formula::{Assignment, Ast};

/// The oracle enumerates `2^n` rows; refuse anything larger.
pub const ORACLE_MAX_VARS: usize = 20;

/// Decides satisfiability by evaluating every assignment of the formula's
/// variables. Works on the source formula (all five connectives), so it
/// shares no code with the CNF path.
pub fn truth_table_oracle(ast: &Ast) -> Result<Satisfiability, SolveError> {
    let vars = checked_vars(ast)?;
    let sat = assignments(&vars).any(|env| ast.eval(&env));
    Ok(if sat {
        Satisfiability::Sat
    } else {
        Satisfiability::Unsat
    })
}

/// Number of satisfying rows of the truth table.
pub fn count_models(ast: &Ast) -> Result<u64, SolveError> {
    let vars = checked_vars(ast)?;
    Ok(assignments(&vars).filter(|env| ast.eval(env)).count() as u64)
}

fn checked_vars(ast: &Ast) -> Result<Vec<String>, SolveError> {
    let vars = ast.variables_in_order();
    if vars.len() > ORACLE_MAX_VARS {
        return Err(SolveError::Capacity {
            max: ORACLE_MAX_VARS,
            found: vars.len(),
        });
    }
    Ok(vars)
}

fn assignments(vars: &[String]) -> impl Iterator<Item = Assignment> + '_ {
    (0..1u64 << vars.len()).map(move |bits| {
        vars.iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), bits >> i & 1 == 1))
            .collect()
    })
}
