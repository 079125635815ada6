use crate::formula::{parse, split_pair, VarMap};

/// Heading under which a PL→NL response puts its restatement.
pub const RECONSTRUCTION_ANCHOR: &str = "Reconstructed Conditions:";

const FORMULA_LABELS: &[&str] = &[
    "formula",
    "final formula",
    "propositional formula",
    "propositional logic formula",
    "logic formula",
    "pl",
    "answer",
    "output",
];

/// Strips markdown decoration (`**`, `#`, backticks, bullets) around a line.
fn undecorate(line: &str) -> &str {
    line.trim()
        .trim_start_matches('#')
        .trim_start_matches(['-', '•'])
        .trim()
        .trim_matches('*')
        .trim()
        .trim_matches('`')
        .trim()
}

fn is_mapping_heading(line: &str) -> bool {
    let l = undecorate(line).trim_end_matches('*').trim();
    let Some(label) = l.strip_suffix(':') else {
        return false;
    };
    let label = label.trim_matches('*').trim().to_ascii_lowercase();
    label.contains("mapping") && label.split_whitespace().count() <= 4
}

/// Splits `Label: rest` when the label is a known formula label.
fn strip_formula_label(line: &str) -> Option<&str> {
    let (label, rest) = line.split_once(':')?;
    let label = label.trim().trim_matches('*').trim().to_ascii_lowercase();
    FORMULA_LABELS
        .contains(&label.as_str())
        .then(|| undecorate(rest.trim().trim_start_matches('*')))
}

fn parses(candidate: &str) -> bool {
    !candidate.is_empty() && parse(candidate).is_ok()
}

/// Pulls a variable mapping and a formula out of free-form model output.
///
/// The mapping is the run of `name: description` lines under a heading that
/// mentions "mapping". The formula is the first labelled `Formula:` line that
/// parses, otherwise the first other line that parses. Anything missing is
/// reported as `None`; this never fails.
pub fn extract_mapping_and_formula(raw: &str) -> (Option<VarMap>, Option<String>) {
    let lines: Vec<&str> = raw.lines().filter(|l| !l.trim_start().starts_with("```")).collect();
    let mut mapping = VarMap::new();
    let mut mapping_lines = vec![false; lines.len()];
    let mut in_block = false;
    for (i, line) in lines.iter().enumerate() {
        if is_mapping_heading(line) {
            in_block = true;
            mapping_lines[i] = true;
            continue;
        }
        if !in_block {
            continue;
        }
        if line.trim().is_empty() {
            if !mapping.is_empty() {
                in_block = false;
            }
            continue;
        }
        if strip_formula_label(undecorate(line)).is_some() {
            in_block = false;
            continue;
        }
        match split_pair(line) {
            Some((name, description)) if mapping.insert(name, description) => mapping_lines[i] = true,
            _ => in_block = false,
        }
    }

    let labelled = lines
        .iter()
        .filter_map(|l| strip_formula_label(undecorate(l)))
        .find(|c| parses(c));
    let formula = labelled.or_else(|| {
        lines
            .iter()
            .zip(&mapping_lines)
            .filter(|(_, in_mapping)| !**in_mapping)
            .map(|(l, _)| undecorate(l))
            .filter(|l| !l.ends_with(':'))
            .find(|c| parses(c))
    });

    (
        (!mapping.is_empty()).then_some(mapping),
        formula.map(str::to_string),
    )
}

/// Lines under the reconstruction heading (including any text after the
/// colon on the heading line itself), joined with newlines. `None` when the
/// heading is missing or nothing follows it.
pub fn extract_reconstruction(raw: &str) -> Option<String> {
    let anchor = RECONSTRUCTION_ANCHOR.to_ascii_lowercase();
    let mut lines = raw.lines();
    let first = loop {
        let line = lines.next()?;
        let plain = undecorate(line).replace("**", "");
        let lower = plain.to_ascii_lowercase();
        if let Some(at) = lower.find(&anchor) {
            break plain[at + anchor.len()..].trim().to_string();
        }
    };
    let body: Vec<String> = std::iter::once(first)
        .chain(lines.map(|l| l.trim().to_string()))
        .filter(|l| !l.is_empty() && !l.starts_with("```"))
        .collect();
    (!body.is_empty()).then(|| body.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelled_formula() {
        let (m, f) = extract_mapping_and_formula("Sure.\nFormula: (!a | b)\n");
        assert_eq!(f.as_deref(), Some("(!a | b)"));
        assert!(m.is_none());
    }

    #[test]
    fn pure_prose() {
        let raw = "I could not determine a formula for this input.\nPlease clarify the scenario.";
        assert_eq!(extract_mapping_and_formula(raw), (None, None));
        assert_eq!(extract_mapping_and_formula(""), (None, None));
    }

    #[test]
    fn mapping_only() {
        let raw = "Mapping:\nT: temperature high\nC: cooling offline\n";
        let (m, f) = extract_mapping_and_formula(raw);
        assert_eq!(m.unwrap().len(), 2);
        assert!(f.is_none());
    }

    #[test]
    fn full_response_with_markdown() {
        let raw = "**Variable Mapping:**\n- `T`: temperature high\n- `C`: cooling offline\n- S: shutdown\n- A: alarm\n\n**Formula:** `((T & C) -> (S | A))`\n";
        let (m, f) = extract_mapping_and_formula(raw);
        let m = m.unwrap();
        assert_eq!(m.names().collect::<Vec<_>>(), ["T", "C", "S", "A"]);
        assert_eq!(f.as_deref(), Some("((T & C) -> (S | A))"));
    }

    #[test]
    fn unlabelled_formula_line_and_code_fence() {
        let raw = "Here you go:\n```\n(~x(0,0) V ~x(0,1) V x(0,2) V x(0,3))\n```\n";
        let (_, f) = extract_mapping_and_formula(raw);
        assert_eq!(f.as_deref(), Some("(~x(0,0) V ~x(0,1) V x(0,2) V x(0,3))"));
    }

    #[test]
    fn mapping_lines_are_not_formulas() {
        // "a: alarm" minus its label would parse as the variable `alarm`
        let raw = "Mapping:\na: alarm\n\nFormula: a & !a_off";
        let (m, f) = extract_mapping_and_formula(raw);
        assert_eq!(m.unwrap().get("a"), Some("alarm"));
        assert_eq!(f.as_deref(), Some("a & !a_off"));
    }

    #[test]
    fn labelled_garbage_falls_back() {
        let (_, f) = extract_mapping_and_formula("Formula: not sure\n(p -> q)");
        assert_eq!(f.as_deref(), Some("(p -> q)"));
    }

    #[test]
    fn reconstruction_anchor() {
        let raw = "Thinking...\nReconstructed Conditions:\nIf it rains, the road is wet.\n\nThe sky is grey.\n";
        assert_eq!(
            extract_reconstruction(raw).as_deref(),
            Some("If it rains, the road is wet.\nThe sky is grey.")
        );
        assert_eq!(
            extract_reconstruction("**Reconstructed Conditions:** alarm sounds").as_deref(),
            Some("alarm sounds")
        );
        assert_eq!(extract_reconstruction("no heading here"), None);
        assert_eq!(extract_reconstruction("Reconstructed Conditions:\n\n"), None);
    }
}
