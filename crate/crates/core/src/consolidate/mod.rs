//! Merges each match cluster into a golden record and pushes repairs
//! back into the contributing rows.

mod backprop;
mod golden;
mod policy;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use backprop::{backpropagate, members_matching_golden_identity, Repair};
pub use golden::{consolidate, ConsolidateError, GoldenRecord};
pub use policy::{PolicyError, SurvivorshipPolicy, SurvivorshipRule};

use crate::matching::MatchCluster;
use crate::model::{RecordRef, Schema};
use crate::standardize::CleansedRecord;

/// One cluster after consolidation: the golden record, the member rows
/// with back-propagated repairs applied, and the list of repairs made.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsolidatedCluster {
    pub golden: GoldenRecord,
    pub members: Vec<CleansedRecord>,
    pub repairs: Vec<Repair>,
}

impl ConsolidatedCluster {
    /// The repaired members whose stated identity matches the golden
    /// record's, in member order.
    pub fn identity_members(&self) -> Vec<&CleansedRecord> {
        members_matching_golden_identity(&self.members, &self.golden)
    }
}

/// Consolidates every cluster against the full dataset. Members are
/// resolved by record reference, so clusters read back from disk (which
/// carry no positional indices) work the same as freshly computed ones.
pub fn consolidate_clusters(
    records: &[CleansedRecord],
    clusters: &[MatchCluster],
    policy: &SurvivorshipPolicy,
    schema: &Schema,
) -> Result<Vec<ConsolidatedCluster>, ConsolidateError> {
    let index: BTreeMap<&RecordRef, usize> = records
        .iter()
        .enumerate()
        .map(|(i, r)| (&r.record_ref, i))
        .collect();

    let mut out = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let mut members = Vec::with_capacity(cluster.members.len());
        for record_ref in &cluster.members {
            let &i = index
                .get(record_ref)
                .ok_or_else(|| ConsolidateError::UnknownMember {
                    record_ref: record_ref.clone(),
                })?;
            members.push(records[i].clone());
        }
        let golden = {
            let refs: Vec<&CleansedRecord> = members.iter().collect();
            consolidate(&refs, policy)?
        };
        let repairs = backpropagate(&mut members, &golden, schema);
        out.push(ConsolidatedCluster {
            golden,
            members,
            repairs,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{match_dataset, MatchConfig};
    use crate::testsupport::cleanse_fixture;

    fn fixture_consolidated() -> Vec<ConsolidatedCluster> {
        let (fixture, records) = cleanse_fixture();
        let clusters = match_dataset(&records, &MatchConfig::default());
        consolidate_clusters(
            &records,
            &clusters,
            &SurvivorshipPolicy::default_order(),
            &fixture.schema,
        )
        .unwrap()
    }

    #[test]
    fn fixture_yields_two_consolidated_clusters() {
        let consolidated = fixture_consolidated();
        assert_eq!(consolidated.len(), 2);
        assert_eq!(consolidated[0].members.len(), 6);
        assert_eq!(consolidated[1].members.len(), 2);
        assert_eq!(consolidated[0].golden.author_id.as_deref(), Some("12345"));
        assert_eq!(consolidated[1].golden.author_id.as_deref(), Some("19875"));
        let repair_count: usize = consolidated.iter().map(|c| c.repairs.len()).sum();
        assert_eq!(repair_count, 4);
    }

    #[test]
    fn identity_members_keep_rows_stating_the_golden_id() {
        let consolidated = fixture_consolidated();
        let rows: Vec<u32> = consolidated
            .iter()
            .flat_map(|c| c.identity_members())
            .map(|m| m.record_ref.row_number)
            .collect();
        assert_eq!(rows, vec![1, 2, 3, 7, 8]);
    }

    #[test]
    fn clusters_read_back_from_json_consolidate_identically() {
        let (fixture, records) = cleanse_fixture();
        let clusters = match_dataset(&records, &MatchConfig::default());
        let json = serde_json::to_string(&clusters).unwrap();
        let reloaded: Vec<MatchCluster> = serde_json::from_str(&json).unwrap();
        assert!(reloaded.iter().all(|c| c.member_indices.is_empty()));
        let policy = SurvivorshipPolicy::default_order();
        let direct = consolidate_clusters(&records, &clusters, &policy, &fixture.schema).unwrap();
        let via_json = consolidate_clusters(&records, &reloaded, &policy, &fixture.schema).unwrap();
        assert_eq!(direct, via_json);
    }

    #[test]
    fn unknown_member_is_an_error() {
        let (fixture, records) = cleanse_fixture();
        let mut clusters = match_dataset(&records, &MatchConfig::default());
        clusters[0].members.push(RecordRef::new("elsewhere", 99));
        let err = consolidate_clusters(
            &records,
            &clusters,
            &SurvivorshipPolicy::default_order(),
            &fixture.schema,
        )
        .unwrap_err();
        assert_eq!(
            err,
            ConsolidateError::UnknownMember {
                record_ref: RecordRef::new("elsewhere", 99)
            }
        );
    }
}
