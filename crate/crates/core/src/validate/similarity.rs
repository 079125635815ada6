use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ValidationError;

/// A percentage in `[0, 100]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimilarityScore(f64);

impl SimilarityScore {
    pub const ZERO: SimilarityScore = SimilarityScore(0.0);

    /// Clamps into `[0, 100]`; NaN and `-0.0` become 0.
    pub fn new(value: f64) -> Self {
        if value.is_nan() || value == 0.0 {
            SimilarityScore(0.0)
        } else {
            SimilarityScore(value.clamp(0.0, 100.0))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for SimilarityScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2}", self.0)
    }
}

/// Term weights keyed (and therefore ordered) by term.
pub type SparseVector = BTreeMap<String, f64>;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TfidfConfig {
    /// Drop common English function words before weighting. Off by default.
    pub remove_stopwords: bool,
}

const STOPWORDS: &[&str] = &[
    "a", "an", "and", "are", "as", "at", "be", "by", "for", "from", "has", "in", "is", "it", "its",
    "of", "on", "or", "that", "the", "to", "was", "were", "will", "with",
];

/// Lowercased maximal runs of alphanumeric characters.
pub fn terms(text: &str, config: &TfidfConfig) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .filter(|t| !(config.remove_stopwords && STOPWORDS.contains(&t.as_str())))
        .collect()
}

pub fn tfidf_vectors(doc_a: &str, doc_b: &str) -> Result<(SparseVector, SparseVector), ValidationError> {
    tfidf_vectors_with(doc_a, doc_b, &TfidfConfig::default())
}

/// TF-IDF over the two-document corpus `{doc_a, doc_b}`.
///
/// tf is the raw count, `idf(t) = ln((1 + N) / (1 + df(t))) + 1` with `N = 2`,
/// and each vector is L2-normalized.
pub fn tfidf_vectors_with(
    doc_a: &str,
    doc_b: &str,
    config: &TfidfConfig,
) -> Result<(SparseVector, SparseVector), ValidationError> {
    let counts_a = counts(doc_a, config).ok_or(ValidationError::EmptyText("first"))?;
    let counts_b = counts(doc_b, config).ok_or(ValidationError::EmptyText("second"))?;
    let n_docs = 2.0_f64;
    let idf = |term: &str| {
        let df = counts_a.contains_key(term) as u8 + counts_b.contains_key(term) as u8;
        ((1.0 + n_docs) / (1.0 + f64::from(df))).ln() + 1.0
    };
    let weigh = |counts: &BTreeMap<String, u32>| {
        let mut v: SparseVector = counts
            .iter()
            .map(|(t, &c)| (t.clone(), f64::from(c) * idf(t)))
            .collect();
        let norm = v.values().map(|w| w * w).sum::<f64>().sqrt();
        v.values_mut().for_each(|w| *w /= norm);
        v
    };
    Ok((weigh(&counts_a), weigh(&counts_b)))
}

fn counts(text: &str, config: &TfidfConfig) -> Option<BTreeMap<String, u32>> {
    let mut out = BTreeMap::new();
    for term in terms(text, config) {
        *out.entry(term).or_insert(0) += 1;
    }
    (!out.is_empty()).then_some(out)
}

pub fn roundtrip_similarity(original: &str, reconstructed: &str) -> Result<SimilarityScore, ValidationError> {
    roundtrip_similarity_with(original, reconstructed, &TfidfConfig::default())
}

/// `100 × cos(tfidf(original), tfidf(reconstructed))`, clamped to `[0, 100]`.
/// Identical vectors score exactly 100.
pub fn roundtrip_similarity_with(
    original: &str,
    reconstructed: &str,
    config: &TfidfConfig,
) -> Result<SimilarityScore, ValidationError> {
    let (a, b) = tfidf_vectors_with(original, reconstructed, config)?;
    if a == b {
        return Ok(SimilarityScore::new(100.0));
    }
    let cosine: f64 = a
        .iter()
        .filter_map(|(term, wa)| b.get(term).map(|wb| wa * wb))
        .sum();
    Ok(SimilarityScore::new(100.0 * cosine))
}
