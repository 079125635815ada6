use std::sync::LazyLock;

use regex::Regex;

use super::is_identifier_char;

static INDEXED_VAR: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\bx\(\s*(\d+)\s*,\s*(\d+)\s*\)").expect("valid regex"));

/// Rewrites indexed variables `x(i,j)` (whitespace allowed inside the
/// parentheses) to `x_i_j`. Everything else is left as is.
pub fn canonicalize_indexed_vars(formula_text: &str) -> String {
    INDEXED_VAR
        .replace_all(formula_text, "x_${1}_${2}")
        .into_owned()
}

/// Maps operator aliases onto the canonical set `! & | -> <->`.
///
/// Rewriting runs to a fixpoint so that inputs such as `&&&` or `|V` settle
/// on a single canonical operator and the function is idempotent.
pub fn normalize_symbols(formula_text: &str) -> String {
    let mut current = normalize_once(formula_text);
    loop {
        let next = normalize_once(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

fn normalize_once(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < chars.len() {
        let rest = &chars[i..];
        let (replacement, consumed) = match rest {
            ['<', '=', '>', ..] => ("<->", 3),
            ['=', '>', ..] => ("->", 2),
            ['&', '&', ..] => ("&", 2),
            ['|', '|', ..] => ("|", 2),
            ['¬', ..] | ['~', ..] => ("!", 1),
            ['∧', ..] => ("&", 1),
            ['∨', ..] => ("|", 1),
            ['→', ..] => ("->", 1),
            ['↔', ..] => ("<->", 1),
            ['V', ..] if is_standalone(&chars, i) => ("|", 1),
            [c, ..] => {
                out.push(*c);
                i += 1;
                continue;
            }
            [] => unreachable!(),
        };
        out.push_str(replacement);
        i += consumed;
    }
    out
}

fn is_standalone(chars: &[char], at: usize) -> bool {
    let before = at.checked_sub(1).map(|j| chars[j]);
    let after = chars.get(at + 1).copied();
    !before.is_some_and(is_identifier_char) && !after.is_some_and(is_identifier_char)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn indexed_vars() {
        assert_eq!(
            canonicalize_indexed_vars("(~x(0,0) V x(0,2))"),
            "(~x_0_0 V x_0_2)"
        );
        assert_eq!(canonicalize_indexed_vars("x_1_2 & y"), "x_1_2 & y");
        assert_eq!(canonicalize_indexed_vars("x( 2 , 10 )"), "x_2_10");
        assert_eq!(canonicalize_indexed_vars("max(1,2)"), "max(1,2)");
        assert_eq!(canonicalize_indexed_vars("x(1,2)x(3,4)"), "x_1_2x_3_4");
        assert_eq!(canonicalize_indexed_vars("x(-1,2)"), "x(-1,2)");
    }

    #[test]
    fn symbols() {
        assert_eq!(normalize_symbols("(~a V b)"), "(!a | b)");
        assert_eq!(normalize_symbols("!a & b"), "!a & b");
        assert_eq!(normalize_symbols("Valve V !Vent"), "Valve | !Vent");
        assert_eq!(normalize_symbols("¬a ∧ b ∨ c → d ↔ e"), "!a & b | c -> d <-> e");
        assert_eq!(normalize_symbols("a && b || c => d <=> e"), "a & b | c -> d <-> e");
        assert_eq!(normalize_symbols("a &&& b"), "a & b");
        assert_eq!(normalize_symbols("a |V b"), "a | b");
        assert_eq!(normalize_symbols("x_1_2V"), "x_1_2V");
        assert_eq!(normalize_symbols("V"), "|");
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(s in r"[x(),0-9 a_]{0,24}") {
            let once = canonicalize_indexed_vars(&s);
            prop_assert_eq!(canonicalize_indexed_vars(&once), once);
        }

        #[test]
        fn normalize_is_idempotent(s in r"[aV_ ~!&|=<>\-¬∧∨→↔()]{0,24}") {
            let once = normalize_symbols(&s);
            prop_assert_eq!(normalize_symbols(&once), once);
        }
    }
}
