//! Rule-driven cleansing, deduplication, and consolidation of
//! research-information records, with weighted data-quality scoring.
//!
//! The engine runs a five-stage pipeline over delimited or line-object
//! datasets: parse and profile raw values, standardize fields into
//! canonical forms, enrich addresses against a gazetteer, match records
//! into clusters with weighted field comparators, and consolidate each
//! cluster into a golden record with per-field lineage. A configurable
//! quality model scores datasets before and after cleansing and
//! recommends an improvement strategy for the dataset.
//!
//! Data-parallel sections (per-record cleansing, pair scoring, rule
//! evaluation) run on rayon when the default `parallel` feature is
//! enabled. The sequential fallbacks compile either way; the criterion
//! bench suite compares the two.

pub mod consolidate;
pub mod enrich;
pub mod matching;
pub mod model;
pub mod parse;
pub mod pipeline;
pub mod quality;
pub mod standardize;
