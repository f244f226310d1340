use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::policy::{SurvivorshipPolicy, SurvivorshipRule};
use crate::model::RecordRef;
use crate::standardize::{
    fuse_street_tokens, CanonicalDate, CanonicalId, CleansedRecord, PersonName, StructuredAddress,
};

/// The consolidated survivor of a cluster: one value per role, plus the
/// records that contributed each winning value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenRecord {
    pub author_id: Option<String>,
    pub name: Option<PersonName>,
    pub id: Option<CanonicalId>,
    pub birth_date: Option<CanonicalDate>,
    pub address: Option<StructuredAddress>,
    pub lineage: BTreeMap<String, Vec<RecordRef>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConsolidateError {
    #[error("cannot consolidate an empty cluster")]
    EmptyCluster,
    #[error("cluster member {record_ref} is not in the dataset")]
    UnknownMember { record_ref: RecordRef },
}

/// Reduces cluster members to one golden record under the given policy.
///
/// Before voting, values are put on an equal footing: name candidates
/// drop their titles and an initial expands to the cluster's prevailing
/// full first name with that letter; an address candidate whose street
/// tokens form a strict subset of another compatible candidate's is
/// counted as a vote for the fuller address.
pub fn consolidate(
    members: &[&CleansedRecord],
    policy: &SurvivorshipPolicy,
) -> Result<GoldenRecord, ConsolidateError> {
    if members.is_empty() {
        return Err(ConsolidateError::EmptyCluster);
    }

    let mut lineage = BTreeMap::new();

    let author_id = survive(
        group_values(
            members
                .iter()
                .filter_map(|m| m.author_id.as_ref().map(|v| (v.clone(), *m))),
        ),
        policy,
        |v: &String| v.len(),
        "author_id",
        &mut lineage,
    );

    let name = survive(
        group_values(members.iter().filter_map(|m| {
            m.name
                .as_ref()
                .map(|v| (canonical_name_vote(v, members), *m))
        })),
        policy,
        |v: &PersonName| v.render().chars().count(),
        "name",
        &mut lineage,
    );

    let id = survive(
        group_values(
            members
                .iter()
                .filter_map(|m| m.id.as_ref().map(|v| (v.clone(), *m))),
        ),
        policy,
        |v: &CanonicalId| v.render().len(),
        "id",
        &mut lineage,
    );

    let birth_date = survive(
        group_values(
            members
                .iter()
                .filter_map(|m| m.birth_date.as_ref().map(|v| (*v, *m))),
        ),
        policy,
        |v: &CanonicalDate| v.render().len(),
        "birth_date",
        &mut lineage,
    );

    let address = survive(
        absorb_partial_addresses(group_values(
            members
                .iter()
                .filter_map(|m| m.address.as_ref().map(|v| (v.clone(), *m))),
        )),
        policy,
        |v: &StructuredAddress| v.render_full().chars().count(),
        "address",
        &mut lineage,
    );

    Ok(GoldenRecord {
        author_id,
        name,
        id,
        birth_date,
        address,
        lineage,
    })
}

/// Title dropped, and an initial replaced by the most common full first
/// name in the cluster that starts with the same letter.
fn canonical_name_vote(name: &PersonName, members: &[&CleansedRecord]) -> PersonName {
    let mut vote = name.clone();
    vote.title = None;
    if vote.first_is_initial {
        if let Some(letter) = vote.first_letter() {
            let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
            for member in members {
                if let Some(full) = member.name.as_ref().filter(|n| !n.first_is_initial) {
                    if full.first_letter() == Some(letter) {
                        if let Some(first) = &full.first {
                            *counts.entry(first.as_str()).or_insert(0) += 1;
                        }
                    }
                }
            }
            let best = counts
                .iter()
                .max_by_key(|(name, count)| (**count, std::cmp::Reverse(*name)));
            if let Some((full, _)) = best {
                vote.first = Some((*full).to_string());
                vote.first_is_initial = false;
            }
        }
    }
    vote
}

/// Groups equal values, preserving first-appearance order.
fn group_values<'a, T: PartialEq>(
    values: impl Iterator<Item = (T, &'a CleansedRecord)>,
) -> Vec<(T, Vec<&'a CleansedRecord>)> {
    let mut groups: Vec<(T, Vec<&'a CleansedRecord>)> = Vec::new();
    for (value, record) in values {
        match groups.iter_mut().find(|(v, _)| *v == value) {
            Some((_, contributors)) => contributors.push(record),
            None => groups.push((value, vec![record])),
        }
    }
    groups
}

/// Folds an address whose street tokens are a strict subset of a
/// compatible fuller address into that address, so fragments reinforce
/// the complete value instead of splitting the vote.
fn absorb_partial_addresses<'a>(
    groups: Vec<(StructuredAddress, Vec<&'a CleansedRecord>)>,
) -> Vec<(StructuredAddress, Vec<&'a CleansedRecord>)> {
    let fused: Vec<BTreeSet<String>> = groups
        .iter()
        .map(|(a, _)| {
            a.street
                .as_deref()
                .map(fuse_street_tokens)
                .unwrap_or_default()
        })
        .collect();

    let compatible = |a: &StructuredAddress, b: &StructuredAddress| {
        let part_ok = |x: &Option<String>, y: &Option<String>| match (x, y) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        };
        part_ok(&a.zip, &b.zip) && part_ok(&a.city, &b.city) && part_ok(&a.state, &b.state)
    };

    let mut target: Vec<usize> = (0..groups.len()).collect();
    for i in 0..groups.len() {
        let absorber = (0..groups.len())
            .filter(|&j| {
                j != i
                    && fused[i].is_subset(&fused[j])
                    && fused[i].len() < fused[j].len()
                    && compatible(&groups[i].0, &groups[j].0)
            })
            .max_by_key(|&j| {
                (
                    fused[j].len(),
                    groups[j].1.len(),
                    std::cmp::Reverse(groups[j].0.render_full()),
                )
            });
        if let Some(j) = absorber {
            target[i] = j;
        }
    }

    // Chase chains: each hop grows the fused set, so this terminates.
    let final_target = |mut i: usize| {
        while target[i] != i {
            i = target[i];
        }
        i
    };

    let finals: Vec<usize> = (0..groups.len()).map(final_target).collect();
    let mut merged: Vec<(StructuredAddress, Vec<&'a CleansedRecord>)> = Vec::new();
    for root in 0..groups.len() {
        if finals[root] != root {
            continue;
        }
        let mut contributors: Vec<&'a CleansedRecord> = Vec::new();
        for (j, (_, group)) in groups.iter().enumerate() {
            if finals[j] == root {
                contributors.extend(group.iter().copied());
            }
        }
        merged.push((groups[root].0.clone(), contributors));
    }
    merged
}

/// Applies the policy's rules as narrowing filters and returns the
/// winning value, recording its contributors in the lineage.
fn survive<T: Clone>(
    mut groups: Vec<(T, Vec<&CleansedRecord>)>,
    policy: &SurvivorshipPolicy,
    render_len: impl Fn(&T) -> usize,
    role: &str,
    lineage: &mut BTreeMap<String, Vec<RecordRef>>,
) -> Option<T> {
    if groups.is_empty() {
        return None;
    }
    for rule in policy.rules() {
        if groups.len() == 1 {
            break;
        }
        match rule {
            SurvivorshipRule::Majority => {
                let best = groups.iter().map(|(_, c)| c.len()).max().unwrap();
                groups.retain(|(_, c)| c.len() == best);
            }
            SurvivorshipRule::MostComplete => {
                let completeness = |contributors: &[&CleansedRecord]| {
                    contributors
                        .iter()
                        .map(|r| r.populated_field_count())
                        .max()
                        .unwrap_or(0)
                };
                let best = groups.iter().map(|(_, c)| completeness(c)).max().unwrap();
                groups.retain(|(_, c)| completeness(c) == best);
            }
            SurvivorshipRule::Longest => {
                let best = groups.iter().map(|(v, _)| render_len(v)).max().unwrap();
                groups.retain(|(v, _)| render_len(v) == best);
            }
            SurvivorshipRule::FirstSeen => {
                fn earliest<'a>(contributors: &[&'a CleansedRecord]) -> &'a RecordRef {
                    contributors.iter().map(|r| &r.record_ref).min().unwrap()
                }
                let best = groups
                    .iter()
                    .map(|(_, c)| earliest(c))
                    .min()
                    .unwrap()
                    .clone();
                groups.retain(|(_, c)| *earliest(c) == best);
            }
        }
    }

    let (value, contributors) = groups.swap_remove(0);
    let mut refs: Vec<RecordRef> = contributors.iter().map(|r| r.record_ref.clone()).collect();
    refs.sort();
    lineage.insert(role.to_string(), refs);
    Some(value)
}
