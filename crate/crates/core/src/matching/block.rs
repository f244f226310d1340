use std::collections::BTreeMap;

use super::compare::BlockingKey;
use crate::standardize::CleansedRecord;

/// Candidate index pairs `(i, j)` with `i < j`, in lexicographic order.
///
/// `LastName` blocking only pairs records sharing a lowercased surname;
/// records without a name never pair. `None` yields every pair.
pub fn block(records: &[CleansedRecord], key: BlockingKey) -> Vec<(usize, usize)> {
    match key {
        BlockingKey::None => {
            let mut pairs = Vec::new();
            for i in 0..records.len() {
                for j in i + 1..records.len() {
                    pairs.push((i, j));
                }
            }
            pairs
        }
        BlockingKey::LastName => {
            let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
            for (i, record) in records.iter().enumerate() {
                if let Some(name) = &record.name {
                    groups.entry(name.last.to_lowercase()).or_default().push(i);
                }
            }
            let mut pairs = Vec::new();
            for members in groups.values() {
                for (a, &i) in members.iter().enumerate() {
                    for &j in &members[a + 1..] {
                        pairs.push((i, j));
                    }
                }
            }
            pairs.sort_unstable();
            pairs
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testsupport::cleanse_fixture;

    #[test]
    fn last_name_blocking_pairs_within_surnames() {
        let (_, records) = cleanse_fixture();
        let pairs = block(&records, BlockingKey::LastName);
        // Six Smit rows and two Scott rows.
        assert_eq!(pairs.len(), 15 + 1);
        assert!(pairs.contains(&(0, 5)));
        assert!(pairs.contains(&(6, 7)));
        assert!(!pairs.iter().any(|&(i, j)| i < 6 && j >= 6));
    }

    #[test]
    fn no_blocking_yields_every_pair() {
        let (_, records) = cleanse_fixture();
        let pairs = block(&records, BlockingKey::None);
        assert_eq!(pairs.len(), 28);
    }

    #[test]
    fn unnamed_records_never_pair_under_last_name_blocking() {
        let (_, mut records) = cleanse_fixture();
        records[0].name = None;
        let pairs = block(&records, BlockingKey::LastName);
        assert!(!pairs.iter().any(|&(i, j)| i == 0 || j == 0));
        assert_eq!(pairs.len(), 10 + 1);
    }

    #[test]
    fn pairs_are_ordered_and_deduplicated() {
        let (_, records) = cleanse_fixture();
        for key in [BlockingKey::None, BlockingKey::LastName] {
            let pairs = block(&records, key);
            let mut sorted = pairs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(pairs, sorted);
            assert!(pairs.iter().all(|&(i, j)| i < j));
        }
    }
}
