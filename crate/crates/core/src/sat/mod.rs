//! Satisfiability checking: a deterministic DPLL solver over
//! [`CnfClauseSet`](crate::cnf::CnfClauseSet) and an exhaustive truth-table
//! oracle over [`Ast`](crate::formula::Ast) used to cross-check it.

mod dpll;
mod oracle;

pub use dpll::{check_model, solve, solve_with_budget, Model, SolveResult, DEFAULT_DECISION_BUDGET};
pub use oracle::{count_models, truth_table_oracle, ORACLE_MAX_VARS};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Satisfiability {
    #[serde(rename = "SAT")]
    Sat,
    #[serde(rename = "UNSAT")]
    Unsat,
}

impl Satisfiability {
    pub fn is_sat(self) -> bool {
        self == Satisfiability::Sat
    }
}

impl fmt::Display for Satisfiability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Satisfiability::Sat => "SAT",
            Satisfiability::Unsat => "UNSAT",
        })
    }
}

impl FromStr for Satisfiability {
    type Err = String;

    /// Accepts `SAT`/`UNSAT` in any case, plus `satisfiable`/`unsatisfiable`
    /// and `true`/`false`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sat" | "satisfiable" | "true" => Ok(Satisfiability::Sat),
            "unsat" | "unsatisfiable" | "false" => Ok(Satisfiability::Unsat),
            other => Err(format!("not a SAT/UNSAT label: {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("decision budget of {budget} exhausted")]
    ResourceExhausted { budget: u64 },
    #[error("truth-table oracle is capped at {max} variables, formula has {found}")]
    Capacity { max: usize, found: usize },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!("SAT".parse::<Satisfiability>(), Ok(Satisfiability::Sat));
        assert_eq!(" unsat ".parse::<Satisfiability>(), Ok(Satisfiability::Unsat));
        assert_eq!("False".parse::<Satisfiability>(), Ok(Satisfiability::Unsat));
        assert!("maybe".parse::<Satisfiability>().is_err());
        assert_eq!(Satisfiability::Unsat.to_string(), "UNSAT");
    }
}
