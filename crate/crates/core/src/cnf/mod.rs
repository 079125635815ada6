//! Deterministic compilation of formulas to CNF.
//!
//! The path is `eliminate_connectives` → `tseitin_cnf` → `map_lits_to_ints`,
//! and `to_dimacs` prints the result. Every step is a pure function of its
//! input, so equal formulas always produce byte-identical DIMACS.

mod clause_set;
mod dimacs;
mod tseitin;

pub use clause_set::{map_lits_to_ints, CnfClauseSet, Literal, SymbolTable};
pub use dimacs::{parse_dimacs, to_dimacs, DimacsError};
pub use tseitin::{
    eliminate_connectives, tseitin_cnf, AuxAllocator, NamedClause, NamedLiteral, TseitinOutput,
    AUX_PREFIX,
};

use thiserror::Error;

use crate::formula::Ast;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("variable {0:?} uses the reserved auxiliary prefix `{AUX_PREFIX}`")]
    ReservedName(String),
    #[error("connective `{0}` must be eliminated before Tseitin encoding")]
    UnsupportedConnective(&'static str),
}

/// Compiles a formula to an integer clause set. Source variables receive ids
/// first, in left-to-right order of first occurrence; auxiliaries follow in
/// allocation order.
pub fn compile(ast: &Ast) -> Result<CnfClauseSet, CompileError> {
    compile_with_order(ast, &ast.variables_in_order())
}

/// Like [`compile`], but source variables listed in `preferred` (for example
/// the keys of a [`VarMap`](crate::formula::VarMap)) are numbered first in
/// that order. Names in `preferred` that do not occur are skipped.
pub fn compile_with_order<S: AsRef<str>>(
    ast: &Ast,
    preferred: &[S],
) -> Result<CnfClauseSet, CompileError> {
    let encoded = tseitin_cnf(&eliminate_connectives(ast))?;
    Ok(map_lits_to_ints(&encoded.clauses, preferred))
}
