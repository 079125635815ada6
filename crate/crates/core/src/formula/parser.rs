use std::collections::BTreeSet;

use super::{
    canonicalize_indexed_vars, normalize_symbols, tokenize, Ast, FormulaError, Token, TokenKind,
};

// NOT > AND > OR > IMPLIES > IFF
fn precedence(kind: TokenKind) -> u8 {
    match kind {
        TokenKind::Not => 5,
        TokenKind::And => 4,
        TokenKind::Or => 3,
        TokenKind::Implies => 2,
        TokenKind::Iff => 1,
        _ => 0,
    }
}

fn right_associative(kind: TokenKind) -> bool {
    matches!(kind, TokenKind::Not | TokenKind::Implies)
}

fn is_binary(kind: TokenKind) -> bool {
    matches!(
        kind,
        TokenKind::And | TokenKind::Or | TokenKind::Implies | TokenKind::Iff
    )
}

/// Shunting-yard conversion to reverse Polish notation.
///
/// Besides reordering, this checks operand/operator alternation so that the
/// output is always accepted by [`rpn_to_ast`].
pub fn to_rpn(tokens: &[Token]) -> Result<Vec<Token>, FormulaError> {
    let mut output = Vec::with_capacity(tokens.len());
    let mut ops: Vec<&Token> = Vec::new();
    let mut expect_operand = true;

    for tok in tokens {
        match tok.kind {
            TokenKind::Var if expect_operand => {
                output.push(tok.clone());
                expect_operand = false;
            }
            TokenKind::Not | TokenKind::LParen if expect_operand => ops.push(tok),
            TokenKind::RParen if !expect_operand => loop {
                match ops.pop() {
                    Some(t) if t.kind == TokenKind::LParen => break,
                    Some(t) => output.push(t.clone()),
                    None => {
                        return Err(FormulaError::parse(
                            "unmatched closing parenthesis",
                            Some(tok.position),
                        ))
                    }
                }
            },
            kind if is_binary(kind) && !expect_operand => {
                while let Some(top) = ops.last() {
                    if top.kind == TokenKind::LParen {
                        break;
                    }
                    let (pt, pk) = (precedence(top.kind), precedence(kind));
                    if pt > pk || (pt == pk && !right_associative(kind)) {
                        output.push(ops.pop().expect("non-empty").clone());
                    } else {
                        break;
                    }
                }
                ops.push(tok);
                expect_operand = true;
            }
            _ => {
                let what = if expect_operand {
                    "expected a variable, '!' or '('"
                } else {
                    "expected an operator or ')'"
                };
                return Err(FormulaError::parse(
                    format!("{what}, found {:?}", tok.lexeme),
                    Some(tok.position),
                ));
            }
        }
    }

    if expect_operand {
        let message = if tokens.is_empty() {
            "empty formula"
        } else {
            "formula ends where an operand is expected"
        };
        return Err(FormulaError::parse(message, None));
    }
    while let Some(top) = ops.pop() {
        if top.kind == TokenKind::LParen {
            return Err(FormulaError::parse("unclosed parenthesis", Some(top.position)));
        }
        output.push(top.clone());
    }
    Ok(output)
}

/// Evaluates an RPN token stream into a tree.
pub fn rpn_to_ast(rpn: &[Token]) -> Result<Ast, FormulaError> {
    let mut stack: Vec<Ast> = Vec::new();
    let underflow = |t: &Token| FormulaError::parse("operator is missing operands", Some(t.position));
    for tok in rpn {
        let node = match tok.kind {
            TokenKind::Var => Ast::Var(tok.lexeme.clone()),
            TokenKind::Not => Ast::not(stack.pop().ok_or_else(|| underflow(tok))?),
            TokenKind::LParen | TokenKind::RParen => {
                return Err(FormulaError::parse(
                    "parenthesis in RPN stream",
                    Some(tok.position),
                ))
            }
            kind => {
                let right = stack.pop().ok_or_else(|| underflow(tok))?;
                let left = stack.pop().ok_or_else(|| underflow(tok))?;
                match kind {
                    TokenKind::And => Ast::and(left, right),
                    TokenKind::Or => Ast::or(left, right),
                    TokenKind::Implies => Ast::implies(left, right),
                    _ => Ast::iff(left, right),
                }
            }
        };
        stack.push(node);
    }
    match (stack.pop(), stack.is_empty()) {
        (Some(root), true) => Ok(root),
        (None, _) => Err(FormulaError::parse("empty formula", None)),
        (Some(_), false) => Err(FormulaError::parse(
            format!("{} operands left without an operator", stack.len() + 1),
            None,
        )),
    }
}

/// Full text-to-tree pipeline: indexed-variable canonicalization, operator
/// normalization, tokenizing, shunting-yard and tree construction.
///
/// Returns the tree and its set of distinct variable names.
pub fn parse(formula_text: &str) -> Result<(Ast, BTreeSet<String>), FormulaError> {
    let text = normalize_symbols(&canonicalize_indexed_vars(formula_text));
    let tokens = tokenize(&text)?;
    let ast = rpn_to_ast(&to_rpn(&tokens)?)?;
    let vars = ast.variables();
    Ok((ast, vars))
}
