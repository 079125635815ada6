use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::TranslatorError;
use crate::formula::{parse, VarMap};

/// Version tag of the prompt files under `prompts/`.
pub const PROMPT_VERSION: &str = "v1";

const NL2PL_SYSTEM: &str = include_str!("../../prompts/nl2pl_system.v1.txt");
const NL2PL_USER: &str = include_str!("../../prompts/nl2pl_user.v1.txt");
const PL2NL_SYSTEM: &str = include_str!("../../prompts/pl2nl_system.v1.txt");
const PL2NL_USER: &str = include_str!("../../prompts/pl2nl_user.v1.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Stage {
    Nl2pl,
    Pl2nl,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptBundle {
    pub system_text: String,
    pub user_text: String,
    pub stage: Stage,
}

impl PromptBundle {
    /// SHA-256 (hex) over the system text, a NUL separator and the user text.
    pub fn sha256(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.system_text.as_bytes());
        hasher.update([0u8]);
        hasher.update(self.user_text.as_bytes());
        hex::encode(hasher.finalize())
    }
}

/// Substitutes `{name}` placeholders in one left-to-right pass, so
/// placeholder-like text inside substituted values is left alone.
fn fill(template: &str, values: &[(&str, &str)]) -> String {
    let mut out = String::with_capacity(template.len());
    let mut rest = template;
    'outer: while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let tail = &rest[open..];
        for (name, value) in values {
            if let Some(after) = tail
                .strip_prefix('{')
                .and_then(|t| t.strip_prefix(*name))
                .and_then(|t| t.strip_prefix('}'))
            {
                out.push_str(value);
                rest = after;
                continue 'outer;
            }
        }
        out.push('{');
        rest = &tail[1..];
    }
    out.push_str(rest);
    out
}

/// NL→PL prompt: the system text carries the output rules; the user text
/// holds the scenario, the mapping and the conditions, in that order.
pub fn build_nl2pl_prompt(
    scenario: &str,
    seed_mapping: &VarMap,
    conditions: &str,
) -> Result<PromptBundle, TranslatorError> {
    let conditions = conditions.trim();
    if conditions.is_empty() {
        return Err(TranslatorError::EmptyInput("conditions"));
    }
    let scenario = match scenario.trim() {
        "" => "(none)",
        s => s,
    };
    let mapping = if seed_mapping.is_empty() {
        "(none provided)".to_string()
    } else {
        seed_mapping.to_lines()
    };
    Ok(PromptBundle {
        system_text: NL2PL_SYSTEM.to_string(),
        user_text: fill(
            NL2PL_USER,
            &[
                ("scenario", scenario),
                ("mapping", &mapping),
                ("conditions", conditions),
            ],
        ),
        stage: Stage::Nl2pl,
    })
}

/// PL→NL prompt: alias lines `name ↦ description` precede the formula, which
/// is embedded in canonical form.
pub fn build_pl2nl_prompt(mapping: &VarMap, formula: &str) -> Result<PromptBundle, TranslatorError> {
    let (ast, _) = parse(formula)?;
    let aliases = if mapping.is_empty() {
        "(none provided)".to_string()
    } else {
        mapping
            .iter()
            .map(|(k, v)| format!("{k} ↦ {v}"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    Ok(PromptBundle {
        system_text: PL2NL_SYSTEM.to_string(),
        user_text: fill(PL2NL_USER, &[("mapping", &aliases), ("formula", &ast.render())]),
        stage: Stage::Pl2nl,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mapping() -> VarMap {
        [("T", "temperature above threshold"), ("A", "alarm sounds")]
            .into_iter()
            .collect()
    }

    #[test]
    fn nl2pl_layout() {
        let p = build_nl2pl_prompt("Reactor cooling", &mapping(), "If T then A.").unwrap();
        assert_eq!(p.stage, Stage::Nl2pl);
        let s = p.user_text.find("Reactor cooling").unwrap();
        let m = p.user_text.find("T: temperature above threshold").unwrap();
        let c = p.user_text.find("If T then A.").unwrap();
        assert!(s < m && m < c);
        assert!(p.system_text.contains("only the symbols declared"));
        assert!(p.system_text.contains("negation explicitly"));
        assert!(p.system_text.contains("Fully parenthesize"));
    }

    #[test]
    fn nl2pl_rejects_empty_conditions() {
        assert_eq!(
            build_nl2pl_prompt("s", &mapping(), "  \n"),
            Err(TranslatorError::EmptyInput("conditions"))
        );
    }

    #[test]
    fn prompts_are_byte_stable() {
        let a = build_nl2pl_prompt("s", &mapping(), "c").unwrap();
        let b = build_nl2pl_prompt("s", &mapping(), "c").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sha256(), b.sha256());
        let a = build_pl2nl_prompt(&mapping(), "T -> A").unwrap();
        assert_eq!(a, build_pl2nl_prompt(&mapping(), "T -> A").unwrap());
    }

    #[test]
    fn pl2nl_alias_lines() {
        let m: VarMap = [("x_2_0", "speed at city")].into_iter().collect();
        let p = build_pl2nl_prompt(&m, "(x_2_0)").unwrap();
        assert!(p.user_text.contains("x_2_0 ↦ speed at city"));
        assert!(p.user_text.find("↦").unwrap() < p.user_text.find("Formula:").unwrap());
        assert!(p.system_text.contains("\"Reconstructed Conditions:\""));
        assert!(matches!(
            build_pl2nl_prompt(&m, "x_2_0 &"),
            Err(TranslatorError::Formula(_))
        ));
    }

    #[test]
    fn fill_is_single_pass() {
        assert_eq!(
            fill("{a} and {b} {c}", &[("a", "{b}"), ("b", "x")]),
            "{b} and x {c}"
        );
    }
}
