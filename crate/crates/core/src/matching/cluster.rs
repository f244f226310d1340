use serde::{Deserialize, Serialize};

use super::compare::MatchPair;
use crate::standardize::CleansedRecord;

/// Union-find with path compression and union by rank.
struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
            rank: vec![0; size],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// A transitive closure of matching pairs. `members` lists every record
/// in the cluster (singletons included); `pairs` keeps the scored pairs
/// at or above the threshold that justify the merge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchCluster {
    pub members: Vec<crate::model::RecordRef>,
    #[serde(skip)]
    pub member_indices: Vec<usize>,
    pub pairs: Vec<MatchPair>,
}

/// Groups records by the pairs scoring at or above the threshold.
/// Clusters come back ordered by their earliest member, members in
/// record order.
pub fn cluster(
    records: &[CleansedRecord],
    pairs: &[MatchPair],
    threshold: f64,
) -> Vec<MatchCluster> {
    let mut uf = UnionFind::new(records.len());
    for pair in pairs {
        if pair.score >= threshold {
            uf.union(pair.left_index, pair.right_index);
        }
    }

    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    for i in 0..records.len() {
        by_root.entry(uf.find(i)).or_default().push(i);
    }
    let mut grouped: Vec<Vec<usize>> = by_root.into_values().collect();
    grouped.sort_by_key(|members| members[0]);

    let mut clusters: Vec<MatchCluster> = Vec::new();
    for member_indices in grouped {
        let members = member_indices
            .iter()
            .map(|&i| records[i].record_ref.clone())
            .collect();
        let supporting = pairs
            .iter()
            .filter(|p| p.score >= threshold && member_indices.contains(&p.left_index))
            .cloned()
            .collect();
        clusters.push(MatchCluster {
            members,
            member_indices,
            pairs: supporting,
        });
    }
    clusters
}
