//! Expert search for academic digital libraries.
//!
//! Ranks candidate experts for a query topic by computing textual, profile,
//! and citation-network expertise estimators and fusing them with
//! unsupervised rank aggregation (CombSUM / CombMNZ). Ships with a corpus
//! ingestion pipeline for flat-file publication dumps, relevance-judgment
//! handling with deterministic negative augmentation, and a P@k / MAP
//! evaluation harness.
//!
//! Score arithmetic is generic over [`Scalar`] (`f32` or `f64`); the
//! pipeline itself runs on [`Score`] (`f64`).

pub mod aggregate;
pub mod catalog;
pub mod corpus;
pub mod eval;
pub mod fixture;
pub mod graphmetrics;
pub mod pipeline;
pub mod profile;
mod scalar;
pub mod textindex;

pub use catalog::{Feature, FeatureCatalog, FeatureGroup};
pub use corpus::{Author, AuthorId, Corpus, JudgmentSet, PubId, Publication, VenueKind};
pub use graphmetrics::{build_citation_graph, CitationGraph};
pub use scalar::Scalar;

/// Concrete scalar used by the pipeline and the CLI.
pub type Score = f64;
