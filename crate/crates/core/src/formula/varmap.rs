use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{canonicalize_indexed_vars, is_identifier};

/// Variable name to natural-language description, in insertion order.
///
/// Keys are canonical identifiers (`x(1,2)` is stored as `x_1_2`). Insertion
/// order is significant: it decides prompt layout and log bytes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarMap {
    entries: IndexMap<String, String>,
}

impl VarMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts or replaces an entry. Replacing keeps the original position.
    /// Returns false (and inserts nothing) when the key is not an identifier.
    pub fn insert(&mut self, name: &str, description: impl Into<String>) -> bool {
        let key = canonicalize_indexed_vars(name.trim());
        if !is_identifier(&key) {
            return false;
        }
        self.entries.insert(key, description.into().trim().to_string());
        true
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.entries.get(name).map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Overlays `other` on top of `self`: entries of `other` win on conflicts,
    /// new keys are appended in `other`'s order.
    pub fn merged_with(&self, other: &VarMap) -> VarMap {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.entries.insert(k.to_string(), v.to_string());
        }
        out
    }

    /// Parses either a JSON object (`{"a": "alarm sounds"}`) or one
    /// `name: description` pair per line (`↦` and `=` also separate).
    /// Lines that do not look like a pair are skipped.
    pub fn parse(text: &str) -> VarMap {
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            if let Ok(entries) = serde_json::from_str::<IndexMap<String, serde_json::Value>>(trimmed)
            {
                let mut map = VarMap::new();
                for (k, v) in entries {
                    let description = match v {
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    };
                    map.insert(&k, description);
                }
                return map;
            }
        }
        let mut map = VarMap::new();
        for line in trimmed.lines() {
            if let Some((name, description)) = split_pair(line) {
                map.insert(name, description);
            }
        }
        map
    }

    /// JSON object text, order preserved. This is the CSV column encoding.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.entries).expect("string map serializes")
    }

    /// `name: description` lines.
    pub fn to_lines(&self) -> String {
        self.iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Splits `name: description`, `name ↦ description` or `name = description`,
/// tolerating list bullets and backticks around the name.
pub(crate) fn split_pair(line: &str) -> Option<(&str, &str)> {
    let line = line.trim().trim_start_matches(['-', '*', '•']).trim();
    let (name, description) = ["↦", ":", "="]
        .iter()
        .filter_map(|sep| line.split_once(sep))
        .min_by_key(|(name, _)| name.len())?;
    let name = name.trim().trim_matches('`').trim();
    let description = description.trim().trim_matches(['"', '\'']).trim();
    if description.is_empty() || !is_identifier(&canonicalize_indexed_vars(name)) {
        return None;
    }
    Some((name, description))
}

impl fmt::Display for VarMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_lines())
    }
}

impl<K: AsRef<str>, V: Into<String>> FromIterator<(K, V)> for VarMap {
    fn from_iter<I: IntoIterator<Item = (K, V)>>(iter: I) -> Self {
        let mut map = VarMap::new();
        for (k, v) in iter {
            map.insert(k.as_ref(), v);
        }
        map
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_insertion_order() {
        let m: VarMap = [("z", "last letter"), ("a", "first letter")].into_iter().collect();
        assert_eq!(m.names().collect::<Vec<_>>(), ["z", "a"]);
        assert_eq!(m.to_json(), r#"{"z":"last letter","a":"first letter"}"#);
    }

    #[test]
    fn canonicalizes_and_rejects_bad_keys() {
        let mut m = VarMap::new();
        assert!(m.insert("x(2,0)", "speed at city"));
        assert!(!m.insert("speed at city", "nope"));
        assert!(!m.insert("2x", "nope"));
        assert_eq!(m.get("x_2_0"), Some("speed at city"));
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn parses_both_encodings() {
        let json = VarMap::parse(r#"{"T": "temperature high", "x(0,1)": "valve open"}"#);
        assert_eq!(json.to_lines(), "T: temperature high\nx_0_1: valve open");
        let lines = VarMap::parse("- T: temperature high\n`C` = cooling offline\nS ↦ shutdown: now\nnot a pair");
        assert_eq!(
            lines.iter().collect::<Vec<_>>(),
            [
                ("T", "temperature high"),
                ("C", "cooling offline"),
                ("S", "shutdown: now")
            ]
        );
        assert_eq!(VarMap::parse(&json.to_json()), json);
    }

    #[test]
    fn merge_prefers_overlay() {
        let base: VarMap = [("a", "one"), ("b", "two")].into_iter().collect();
        let overlay: VarMap = [("b", "TWO"), ("c", "three")].into_iter().collect();
        let merged = base.merged_with(&overlay);
        assert_eq!(
            merged.iter().collect::<Vec<_>>(),
            [("a", "one"), ("b", "TWO"), ("c", "three")]
        );
    }
}
