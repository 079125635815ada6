use std::collections::HashMap;

use super::{
    build_nl2pl_prompt, build_pl2nl_prompt, extract_mapping_and_formula, Exchange,
    FormalizeRequest, Translator, TranslatorError, TranslatorOutput, RECONSTRUCTION_ANCHOR,
};
use crate::formula::{parse, Ast, VarMap};

/// Template verbalization of a formula using the mapping's descriptions.
///
/// `¬c` reads "it is not the case that c", `∧` "and", `∨` "or", `→`
/// "if l then r", `↔` "l if and only if r". A binary node with a compound
/// operand puts a comma before its connective, e.g.
/// "if a and b, then c or d".
pub fn verbalize_offline(formula: &Ast, mapping: &VarMap) -> Result<String, TranslatorError> {
    let missing: Vec<String> = formula
        .variables_in_order()
        .into_iter()
        .filter(|v| !mapping.contains(v))
        .collect();
    if !missing.is_empty() {
        return Err(TranslatorError::MissingAlias(missing));
    }
    Ok(verbalize(formula, mapping))
}

fn is_compound(ast: &Ast) -> bool {
    match ast {
        Ast::Var(_) => false,
        Ast::Not(child) => is_compound(child),
        _ => true,
    }
}

fn verbalize(ast: &Ast, mapping: &VarMap) -> String {
    let (l, r) = match ast {
        Ast::Var(name) => return mapping.get(name).unwrap_or(name).to_string(),
        Ast::Not(child) => return format!("it is not the case that {}", verbalize(child, mapping)),
        Ast::And(l, r) | Ast::Or(l, r) | Ast::Implies(l, r) | Ast::Iff(l, r) => (l, r),
    };
    let sep = if is_compound(l) || is_compound(r) { "," } else { "" };
    let (lt, rt) = (verbalize(l, mapping), verbalize(r, mapping));
    match ast {
        Ast::And(..) => format!("{lt}{sep} and {rt}"),
        Ast::Or(..) => format!("{lt}{sep} or {rt}"),
        Ast::Implies(..) => format!("if {lt}{sep} then {rt}"),
        _ => format!("{lt}{sep} if and only if {rt}"),
    }
}

/// Networkless [`Translator`].
///
/// NL→PL answers come from a table of canned responses keyed by item id;
/// unknown ids get an empty response (which extracts to nothing). PL→NL
/// uses [`verbalize_offline`]. No model is called, so latency is reported as
/// zero and token counts as absent.
#[derive(Debug, Clone, Default)]
pub struct OfflineTranslator {
    responses: HashMap<String, String>,
}

impl OfflineTranslator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers the raw NL→PL response for item `id`.
    pub fn with_response(mut self, id: impl Into<String>, raw: impl Into<String>) -> Self {
        self.responses.insert(id.into(), raw.into());
        self
    }

    /// Canned response in the format the NL→PL prompt asks for.
    pub fn formatted_response(mapping: &VarMap, formula: &str) -> String {
        if mapping.is_empty() {
            format!("Formula: {formula}\n")
        } else {
            format!("Mapping:\n{}\n\nFormula: {formula}\n", mapping.to_lines())
        }
    }

    pub fn len(&self) -> usize {
        self.responses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.responses.is_empty()
    }
}

impl Translator for OfflineTranslator {
    fn formalize(&self, request: &FormalizeRequest<'_>) -> Result<Exchange, TranslatorError> {
        let prompt = build_nl2pl_prompt(request.scenario, request.mapping, request.conditions)?;
        let raw_text = self.responses.get(request.id).cloned().unwrap_or_default();
        let (mapping, formula) = extract_mapping_and_formula(&raw_text);
        Ok(Exchange {
            prompt,
            output: TranslatorOutput {
                raw_text,
                extracted_formula: formula,
                extracted_mapping: mapping,
                ..Default::default()
            },
            request_body: None,
            response_body: None,
        })
    }

    fn reconstruct(&self, mapping: &VarMap, formula: &str) -> Result<Exchange, TranslatorError> {
        let prompt = build_pl2nl_prompt(mapping, formula)?;
        let (ast, _) = parse(formula)?;
        let text = verbalize_offline(&ast, mapping)?;
        Ok(Exchange {
            prompt,
            output: TranslatorOutput {
                raw_text: format!("{RECONSTRUCTION_ANCHOR}\n{text}\n"),
                ..Default::default()
            },
            request_body: None,
            response_body: None,
        })
    }
}
