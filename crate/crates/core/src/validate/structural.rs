use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::cnf::{CnfClauseSet, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralVerdict {
    pub well_formed: bool,
    pub symbol_coverage_ok: bool,
    /// Formula variables missing from the declared vocabulary, sorted.
    pub uncovered_symbols: Vec<String>,
    /// Indices of clauses containing both `l` and `-l`.
    pub tautological_clauses: Vec<usize>,
}

impl StructuralVerdict {
    pub fn passes(&self) -> bool {
        self.well_formed && self.symbol_coverage_ok && self.tautological_clauses.is_empty()
    }
}

pub fn structural_check(
    cnf: &CnfClauseSet,
    formula_vars: &BTreeSet<String>,
    declared_vars: &BTreeSet<String>,
) -> StructuralVerdict {
    let uncovered_symbols: Vec<String> = formula_vars.difference(declared_vars).cloned().collect();
    StructuralVerdict {
        well_formed: cnf.is_well_formed(),
        symbol_coverage_ok: uncovered_symbols.is_empty(),
        uncovered_symbols,
        tautological_clauses: tautological_clauses(cnf.clauses()),
    }
}

pub fn tautological_clauses(clauses: &[Vec<Literal>]) -> Vec<usize> {
    clauses
        .iter()
        .enumerate()
        .filter(|(_, clause)| {
            let lits: HashSet<Literal> = clause.iter().copied().collect();
            lits.iter().any(|l| lits.contains(&-l))
        })
        .map(|(i, _)| i)
        .collect()
}
