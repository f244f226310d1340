//! Duplicate detection: weighted field comparators scored over blocked
//! candidate pairs, then transitive clustering at a threshold.

mod block;
mod cluster;
mod compare;
mod similarity;

pub use block::block;
pub use cluster::{cluster, MatchCluster};
pub use compare::{
    compare, BlockingKey, ComparatorScore, ComparatorWeights, MatchConfig, MatchConfigError,
    MatchPair,
};
pub use similarity::{jaccard, levenshtein, normalized_similarity};

use crate::standardize::CleansedRecord;

/// Scores every blocked candidate pair. Pair order follows the blocking
/// order (lexicographic index pairs) regardless of how the work is
/// scheduled.
pub fn score_pairs_sequential(records: &[CleansedRecord], config: &MatchConfig) -> Vec<MatchPair> {
    block(records, config.blocking_key)
        .into_iter()
        .map(|(i, j)| compare(&records[i], &records[j], i, j, &config.weights))
        .collect()
}

#[cfg(feature = "parallel")]
pub fn score_pairs(records: &[CleansedRecord], config: &MatchConfig) -> Vec<MatchPair> {
    use rayon::prelude::*;

    block(records, config.blocking_key)
        .into_par_iter()
        .map(|(i, j)| compare(&records[i], &records[j], i, j, &config.weights))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn score_pairs(records: &[CleansedRecord], config: &MatchConfig) -> Vec<MatchPair> {
    score_pairs_sequential(records, config)
}

/// Blocks, scores, and clusters in one call.
pub fn match_dataset(records: &[CleansedRecord], config: &MatchConfig) -> Vec<MatchCluster> {
    let pairs = score_pairs(records, config);
    cluster(records, &pairs, config.match_threshold)
}

pub fn match_dataset_sequential(
    records: &[CleansedRecord],
    config: &MatchConfig,
) -> Vec<MatchCluster> {
    let pairs = score_pairs_sequential(records, config);
    cluster(records, &pairs, config.match_threshold)
}
