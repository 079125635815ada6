//! Round-trip and structural validators, and the τ acceptance policy.

mod policy;
mod similarity;
mod structural;

pub use policy::{accept, reject_unparseable, AcceptanceDecision, RejectReason, DEFAULT_TAU};
pub use similarity::{
    roundtrip_similarity, roundtrip_similarity_with, terms, tfidf_vectors, tfidf_vectors_with,
    SimilarityScore, SparseVector, TfidfConfig,
};
pub use structural::{structural_check, tautological_clauses, StructuralVerdict};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("{0} text has no terms")]
    EmptyText(&'static str),
    #[error("threshold {0} is outside [0, 100]")]
    TauOutOfRange(f64),
}
