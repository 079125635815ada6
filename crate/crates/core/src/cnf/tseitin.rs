use std::fmt;

use super::CompileError;
use crate::formula::Ast;

/// Names of auxiliary variables start with this prefix. Source formulas may
/// not use it.
pub const AUX_PREFIX: &str = "_aux_";

/// Rewrites `→` and `↔` into `¬ ∧ ∨`:
/// `a → b` becomes `¬a ∨ b`, `a ↔ b` becomes `(¬a ∨ b) ∧ (¬b ∨ a)`.
pub fn eliminate_connectives(ast: &Ast) -> Ast {
    match ast {
        Ast::Var(_) => ast.clone(),
        Ast::Not(c) => Ast::not(eliminate_connectives(c)),
        Ast::And(l, r) => Ast::and(eliminate_connectives(l), eliminate_connectives(r)),
        Ast::Or(l, r) => Ast::or(eliminate_connectives(l), eliminate_connectives(r)),
        Ast::Implies(l, r) => Ast::or(Ast::not(eliminate_connectives(l)), eliminate_connectives(r)),
        Ast::Iff(l, r) => {
            let (l, r) = (eliminate_connectives(l), eliminate_connectives(r));
            Ast::and(
                Ast::or(Ast::not(l.clone()), r.clone()),
                Ast::or(Ast::not(r), l),
            )
        }
    }
}

/// A possibly negated variable name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NamedLiteral {
    pub name: String,
    pub positive: bool,
}

impl NamedLiteral {
    pub fn pos(name: impl Into<String>) -> Self {
        NamedLiteral {
            name: name.into(),
            positive: true,
        }
    }

    pub fn neg(name: impl Into<String>) -> Self {
        NamedLiteral {
            name: name.into(),
            positive: false,
        }
    }

    pub fn negated(&self) -> Self {
        NamedLiteral {
            name: self.name.clone(),
            positive: !self.positive,
        }
    }

    /// Parses `name` or `!name`.
    pub fn parse(text: &str) -> Self {
        match text.strip_prefix('!') {
            Some(name) => NamedLiteral::neg(name),
            None => NamedLiteral::pos(text),
        }
    }
}

impl fmt::Display for NamedLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        f.write_str(&self.name)
    }
}

pub type NamedClause = Vec<NamedLiteral>;

/// Hands out `_aux_0`, `_aux_1`, ... for a single compilation.
#[derive(Debug, Default)]
pub struct AuxAllocator {
    next_index: usize,
}

impl AuxAllocator {
    pub fn fresh(&mut self) -> String {
        let name = format!("{AUX_PREFIX}{}", self.next_index);
        self.next_index += 1;
        name
    }

    pub fn allocated(&self) -> usize {
        self.next_index
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TseitinOutput {
    pub clauses: Vec<NamedClause>,
    pub top: NamedLiteral,
    pub aux_count: usize,
}

/// Tseitin encoding of a `¬ ∧ ∨` formula.
///
/// Each internal node gets a fresh variable constrained to equal the node's
/// value; negated leaves are inlined as negative literals. The last clause is
/// the unit clause asserting the root. Auxiliaries are allocated in post-order.
pub fn tseitin_cnf(ast: &Ast) -> Result<TseitinOutput, CompileError> {
    let mut encoder = Encoder::default();
    let top = encoder.encode(ast)?;
    encoder.clauses.push(vec![top.clone()]);
    Ok(TseitinOutput {
        clauses: encoder.clauses,
        top,
        aux_count: encoder.aux.allocated(),
    })
}

#[derive(Default)]
struct Encoder {
    aux: AuxAllocator,
    clauses: Vec<NamedClause>,
}

impl Encoder {
    fn encode(&mut self, node: &Ast) -> Result<NamedLiteral, CompileError> {
        match node {
            Ast::Var(name) => leaf(name),
            Ast::Not(child) => {
                if let Ast::Var(name) = child.as_ref() {
                    return Ok(leaf(name)?.negated());
                }
                let a = self.encode(child)?;
                let v = NamedLiteral::pos(self.aux.fresh());
                // v <-> !a
                self.clauses.push(vec![v.negated(), a.negated()]);
                self.clauses.push(vec![a, v.clone()]);
                Ok(v)
            }
            Ast::And(l, r) => {
                let a = self.encode(l)?;
                let b = self.encode(r)?;
                let v = NamedLiteral::pos(self.aux.fresh());
                // v <-> a & b
                self.clauses.push(vec![v.negated(), a.clone()]);
                self.clauses.push(vec![v.negated(), b.clone()]);
                self.clauses.push(vec![a.negated(), b.negated(), v.clone()]);
                Ok(v)
            }
            Ast::Or(l, r) => {
                let a = self.encode(l)?;
                let b = self.encode(r)?;
                let v = NamedLiteral::pos(self.aux.fresh());
                // v <-> a | b
                self.clauses.push(vec![v.negated(), a.clone(), b.clone()]);
                self.clauses.push(vec![a.negated(), v.clone()]);
                self.clauses.push(vec![b.negated(), v.clone()]);
                Ok(v)
            }
            Ast::Implies(..) => Err(CompileError::UnsupportedConnective("->")),
            Ast::Iff(..) => Err(CompileError::UnsupportedConnective("<->")),
        }
    }
}

fn leaf(name: &str) -> Result<NamedLiteral, CompileError> {
    if name.starts_with(AUX_PREFIX) {
        return Err(CompileError::ReservedName(name.to_string()));
    }
    Ok(NamedLiteral::pos(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Assignment};

    fn lits(clause: &NamedClause) -> Vec<String> {
        clause.iter().map(ToString::to_string).collect()
    }

    fn truth_tables_match(a: &Ast, b: &Ast) -> bool {
        let vars = a.variables_in_order();
        (0..1u32 << vars.len()).all(|bits| {
            let env: Assignment = vars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), bits >> i & 1 == 1))
                .collect();
            a.eval(&env) == b.eval(&env)
        })
    }

    #[test]
    fn eliminate_examples() {
        let a = Ast::var("a");
        let b = Ast::var("b");
        assert_eq!(
            eliminate_connectives(&Ast::implies(a.clone(), b.clone())),
            Ast::or(Ast::not(a.clone()), b.clone())
        );
        assert_eq!(
            eliminate_connectives(&Ast::iff(a.clone(), b.clone())),
            Ast::and(
                Ast::or(Ast::not(a.clone()), b.clone()),
                Ast::or(Ast::not(b), a)
            )
        );
        let nested = parse("a -> (b <-> c)").unwrap().0;
        let out = eliminate_connectives(&nested);
        assert!(truth_tables_match(&nested, &out));
        assert!(!out.render().contains("->"));
    }

    #[test]
    fn leaf_needs_no_auxiliary() {
        let out = tseitin_cnf(&Ast::var("a")).unwrap();
        assert_eq!(out.clauses.len(), 1);
        assert_eq!(lits(&out.clauses[0]), ["a"]);
        assert_eq!(out.aux_count, 0);

        let out = tseitin_cnf(&Ast::not(Ast::var("a"))).unwrap();
        assert_eq!(out.clauses, vec![vec![NamedLiteral::neg("a")]]);
    }

    #[test]
    fn gate_clauses() {
        let out = tseitin_cnf(&Ast::and(Ast::var("a"), Ast::var("b"))).unwrap();
        let rendered: Vec<_> = out.clauses.iter().map(lits).collect();
        assert_eq!(
            rendered,
            vec![
                vec!["!_aux_0", "a"],
                vec!["!_aux_0", "b"],
                vec!["!a", "!b", "_aux_0"],
                vec!["_aux_0"],
            ]
        );

        let out = tseitin_cnf(&Ast::or(Ast::not(Ast::var("a")), Ast::var("b"))).unwrap();
        let rendered: Vec<_> = out.clauses.iter().map(lits).collect();
        assert_eq!(
            rendered,
            vec![
                vec!["!_aux_0", "!a", "b"],
                vec!["a", "_aux_0"],
                vec!["!b", "_aux_0"],
                vec!["_aux_0"],
            ]
        );
    }

    #[test]
    fn auxiliaries_follow_post_order() {
        // (a & b) | !(c | d): left And gets _aux_0, inner Or _aux_1, Not _aux_2, root _aux_3
        let (ast, _) = parse("(a & b) | !(c | d)").unwrap();
        let out = tseitin_cnf(&ast).unwrap();
        assert_eq!(out.aux_count, 4);
        assert_eq!(out.top, NamedLiteral::pos("_aux_3"));
        assert_eq!(lits(&out.clauses[6]), ["!_aux_2", "!_aux_1"]);
    }

    #[test]
    fn refuses_unlowered_connectives() {
        let (ast, _) = parse("a -> b").unwrap();
        assert_eq!(
            tseitin_cnf(&ast),
            Err(CompileError::UnsupportedConnective("->"))
        );
    }
}
