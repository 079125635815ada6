use std::fmt::Write as _;

use thiserror::Error;

use super::{CnfClauseSet, Literal, SymbolTable};
use crate::formula::is_identifier;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: clause data before the `p cnf` header")]
    MissingHeader { line: usize },
    #[error("no `p cnf` header found")]
    NoHeader,
    #[error("line {line}: second `p cnf` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed header {text:?}")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: invalid literal {text:?}")]
    BadLiteral { line: usize, text: String },
    #[error("line {line}: literal {literal} exceeds the declared {num_vars} variables")]
    LiteralOutOfRange {
        line: usize,
        literal: Literal,
        num_vars: usize,
    },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCountMismatch { declared: usize, found: usize },
}

/// Prints `c <id> <name>` lines for the symbol table, the `p cnf` header and
/// one ` 0`-terminated line per clause, all `\n`-terminated.
pub fn to_dimacs(cnf: &CnfClauseSet) -> String {
    let mut out = String::new();
    for (id, name) in cnf.symbols().iter() {
        let _ = writeln!(out, "c {id} {name}");
    }
    let _ = writeln!(out, "p cnf {} {}", cnf.num_vars(), cnf.num_clauses());
    for clause in cnf.clauses() {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

/// Reads DIMACS CNF. Clauses may span lines. `c <id> <name>` comments are
/// read back into the symbol table when together they cover exactly
/// `1..=num_vars`; any other comment is ignored. A `%` line ends the data.
pub fn parse_dimacs(text: &str) -> Result<CnfClauseSet, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut symbol_lines: Vec<(u32, String)> = Vec::new();
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(comment) = line.strip_prefix('c') {
            if comment.is_empty() || comment.starts_with(char::is_whitespace) {
                if let Some(entry) = symbol_comment(comment) {
                    symbol_lines.push(entry);
                }
                continue;
            }
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line: line_no });
            }
            header = Some(parse_header(line).ok_or_else(|| DimacsError::BadHeader {
                line: line_no,
                text: line.to_string(),
            })?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(DimacsError::MissingHeader { line: line_no });
        };
        for token in line.split_whitespace() {
            let literal: Literal = token.parse().map_err(|_| DimacsError::BadLiteral {
                line: line_no,
                text: token.to_string(),
            })?;
            if literal == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if literal.unsigned_abs() as usize > num_vars {
                return Err(DimacsError::LiteralOutOfRange {
                    line: line_no,
                    literal,
                    num_vars,
                });
            } else {
                current.push(literal);
            }
        }
    }

    let (num_vars, declared) = header.ok_or(DimacsError::NoHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCountMismatch {
            declared,
            found: clauses.len(),
        });
    }
    Ok(CnfClauseSet::from_parts(
        clauses,
        num_vars,
        rebuild_symbols(symbol_lines, num_vars),
    ))
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "p" || parts.next()? != "cnf" {
        return None;
    }
    let vars = parts.next()?.parse().ok()?;
    let clauses = parts.next()?.parse().ok()?;
    parts.next().is_none().then_some((vars, clauses))
}

fn symbol_comment(comment: &str) -> Option<(u32, String)> {
    let mut parts = comment.split_whitespace();
    let id: u32 = parts.next()?.parse().ok()?;
    let name = parts.next()?;
    (id > 0 && parts.next().is_none() && is_identifier(name)).then(|| (id, name.to_string()))
}

fn rebuild_symbols(mut entries: Vec<(u32, String)>, num_vars: usize) -> SymbolTable {
    entries.sort_by_key(|(id, _)| *id);
    let contiguous = entries.len() == num_vars
        && entries
            .iter()
            .enumerate()
            .all(|(i, (id, _))| *id as usize == i + 1);
    if !contiguous {
        return SymbolTable::new();
    }
    let table: SymbolTable = entries.iter().map(|(_, name)| name.as_str()).collect();
    if table.len() == num_vars {
        table
    } else {
        // duplicate names
        SymbolTable::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn named(clauses: Vec<Vec<Literal>>, names: &[&str]) -> CnfClauseSet {
        CnfClauseSet::from_parts(clauses, names.len(), names.iter().collect())
    }

    #[test]
    fn minimal_document() {
        let cnf = named(vec![vec![1]], &["a"]);
        let text = to_dimacs(&cnf);
        assert_eq!(text, "c 1 a\np cnf 1 1\n1 0\n");
        assert_eq!(text.matches("p cnf").count(), 1);
        assert_eq!(parse_dimacs(&text).unwrap(), cnf);
    }

    #[test]
    fn empty_set_and_empty_clause() {
        let empty = CnfClauseSet::new(vec![], 0);
        assert_eq!(to_dimacs(&empty), "p cnf 0 0\n");
        assert_eq!(parse_dimacs("p cnf 0 0\n").unwrap(), empty);

        let with_empty_clause = CnfClauseSet::new(vec![vec![1], vec![]], 1);
        let text = to_dimacs(&with_empty_clause);
        assert_eq!(text, "p cnf 1 2\n1 0\n0\n");
        assert_eq!(parse_dimacs(&text).unwrap(), with_empty_clause);
    }

    #[test]
    fn foreign_input() {
        let text = "c generated elsewhere\nc\np cnf 3 2\n1 -3\n 0 2\n3 0\n%\n0\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf.clauses(), &[vec![1, -3], vec![2, 3]]);
        assert!(cnf.symbols().is_empty());

        // partial symbol comments are ignored rather than trusted
        let cnf = parse_dimacs("c 1 a\np cnf 2 1\n1 2 0\n").unwrap();
        assert!(cnf.symbols().is_empty());
        assert!(cnf.is_well_formed());
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_dimacs("p cnf 1 1\n2 0\n"),
            Err(DimacsError::LiteralOutOfRange {
                line: 2,
                literal: 2,
                num_vars: 1
            })
        );
        assert_eq!(parse_dimacs("1 0\n"), Err(DimacsError::MissingHeader { line: 1 }));
        assert_eq!(parse_dimacs("c only\n"), Err(DimacsError::NoHeader));
        assert_eq!(
            parse_dimacs("p cnf 1 1\np cnf 1 1\n1 0\n"),
            Err(DimacsError::DuplicateHeader { line: 2 })
        );
        assert_eq!(parse_dimacs("p cnf 2 1\n1 2\n"), Err(DimacsError::UnterminatedClause));
        assert!(matches!(
            parse_dimacs("p cnf 2 2\n1 2 0\n"),
            Err(DimacsError::ClauseCountMismatch { declared: 2, found: 1 })
        ));
        assert!(matches!(parse_dimacs("p dnf 1 1\n1 0\n"), Err(DimacsError::BadHeader { .. })));
        assert!(matches!(parse_dimacs("p cnf 1 1\n1 x 0\n"), Err(DimacsError::BadLiteral { .. })));
    }

    fn arb_clause_set() -> impl Strategy<Value = CnfClauseSet> {
        (1usize..12).prop_flat_map(|n| {
            let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v });
            (
                prop::collection::vec(prop::collection::vec(lit, 0..6), 0..20),
                any::<bool>(),
            )
                .prop_map(move |(clauses, with_names)| {
                    let symbols = if with_names {
                        (1..=n).map(|i| format!("v{i}")).collect()
                    } else {
                        SymbolTable::new()
                    };
                    CnfClauseSet::from_parts(clauses, n, symbols)
                })
        })
    }

    proptest! {
        #[test]
        fn dimacs_round_trip(cnf in arb_clause_set()) {
            let text = to_dimacs(&cnf);
            prop_assert_eq!(parse_dimacs(&text).unwrap(), cnf);
            prop_assert!(!text.ends_with("\n\n"));
        }
    }
}
