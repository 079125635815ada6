//! Propositional formulas: surface-syntax cleanup, tokenizing, shunting-yard
//! parsing into an [`Ast`] and canonical rendering.
//!
//! The accepted grammar is deliberately forgiving about operator spelling
//! (`¬ ~ !`, `∧ && &`, `∨ || | V`, `→ => ->`, `↔ <=> <->`) because model
//! output rarely sticks to one convention, but strict about structure: every
//! formula must reduce to exactly one well-formed tree.

mod ast;
mod lexer;
mod normalize;
mod parser;
mod varmap;

pub use ast::{Assignment, Ast};
pub use lexer::{tokenize, Token, TokenKind};
pub use normalize::{canonicalize_indexed_vars, normalize_symbols};
pub use parser::{parse, rpn_to_ast, to_rpn};
pub use varmap::VarMap;
pub(crate) use varmap::split_pair;

use thiserror::Error;

/// Failure to turn formula text into an [`Ast`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("unexpected character at offset {position}: {snippet:?}")]
    Lex { position: usize, snippet: String },
    #[error("parse error{}: {message}", position.map(|p| format!(" at offset {p}")).unwrap_or_default())]
    Parse {
        message: String,
        position: Option<usize>,
    },
}

impl FormulaError {
    pub(crate) fn parse(message: impl Into<String>, position: Option<usize>) -> Self {
        FormulaError::Parse {
            message: message.into(),
            position,
        }
    }
}

/// Returns true when `name` matches `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(is_identifier_char)
}

pub(crate) fn is_identifier_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}
