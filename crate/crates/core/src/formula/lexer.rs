use std::fmt;

use super::{is_identifier_char, FormulaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Var,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

/// A lexeme together with its character offset in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub position: usize,
}

impl Token {
    pub fn new(kind: TokenKind, lexeme: impl Into<String>, position: usize) -> Self {
        Token {
            kind,
            lexeme: lexeme.into(),
            position,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Var => write!(f, "VAR({})", self.lexeme),
            kind => write!(f, "{kind:?}"),
        }
    }
}

/// Splits canonical-syntax formula text into tokens.
///
/// Offsets are character (not byte) positions. Whitespace is skipped; any
/// other character outside the canonical alphabet is a [`FormulaError::Lex`].
pub fn tokenize(formula_text: &str) -> Result<Vec<Token>, FormulaError> {
    let chars: Vec<char> = formula_text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '!' => Some(TokenKind::Not),
            '&' => Some(TokenKind::And),
            '|' => Some(TokenKind::Or),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token::new(kind, c.to_string(), i));
            i += 1;
        } else if chars[i..].starts_with(&['<', '-', '>']) {
            tokens.push(Token::new(TokenKind::Iff, "<->", i));
            i += 3;
        } else if chars[i..].starts_with(&['-', '>']) {
            tokens.push(Token::new(TokenKind::Implies, "->", i));
            i += 2;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && is_identifier_char(chars[i]) {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            tokens.push(Token::new(TokenKind::Var, name, start));
        } else {
            return Err(lex_error(&chars, i));
        }
    }
    Ok(tokens)
}

fn lex_error(chars: &[char], position: usize) -> FormulaError {
    let end = (position + 8).min(chars.len());
    FormulaError::Lex {
        position,
        snippet: chars[position..end].iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use TokenKind::*;

    fn kinds(s: &str) -> Vec<TokenKind> {
        tokenize(s).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn small_stream() {
        let toks = tokenize("!a & b").unwrap();
        assert_eq!(
            toks,
            vec![
                Token::new(Not, "!", 0),
                Token::new(Var, "a", 1),
                Token::new(And, "&", 3),
                Token::new(Var, "b", 5),
            ]
        );
    }

    #[test]
    fn arrows_lex_greedily() {
        assert_eq!(
            kinds("(a -> b) <-> c"),
            vec![LParen, Var, Implies, Var, RParen, Iff, Var]
        );
        assert_eq!(kinds("a<->b->c"), vec![Var, Iff, Var, Implies, Var]);
    }

    #[test]
    fn rejects_foreign_characters() {
        assert_eq!(
            tokenize("a $ b"),
            Err(FormulaError::Lex {
                position: 2,
                snippet: "$ b".into()
            })
        );
        assert!(matches!(tokenize("a - b"), Err(FormulaError::Lex { position: 2, .. })));
        assert!(matches!(tokenize("a < b"), Err(FormulaError::Lex { position: 2, .. })));
        assert!(matches!(tokenize("1a"), Err(FormulaError::Lex { position: 0, .. })));
        // offsets count characters, not bytes
        assert!(matches!(tokenize("é ∧ b"), Err(FormulaError::Lex { position: 0, .. })));
        assert!(matches!(tokenize("a ∧ b"), Err(FormulaError::Lex { position: 2, .. })));
    }

    proptest! {
        #[test]
        fn tokenizer_is_total(s in r"[a-c_0-9 !&|()<>\-$~]{0,30}") {
            let len = s.chars().count();
            match tokenize(&s) {
                Ok(tokens) => {
                    let covered: usize = tokens.iter().map(|t| t.lexeme.chars().count()).sum();
                    let non_ws = s.chars().filter(|c| !c.is_whitespace()).count();
                    prop_assert_eq!(covered, non_ws);
                    for t in &tokens {
                        prop_assert!(t.position < len);
                    }
                }
                Err(FormulaError::Lex { position, .. }) => prop_assert!(position < len),
                Err(other) => prop_assert!(false, "unexpected error {other:?}"),
            }
        }
    }
}
