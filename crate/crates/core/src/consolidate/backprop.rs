use serde::{Deserialize, Serialize};

use super::golden::GoldenRecord;
use crate::model::{DefectCode, FieldKind, RecordRef, Schema};
use crate::standardize::{fuse_street_tokens, CleansedRecord};

/// One member-record cell rewritten from the golden record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Repair {
    pub record_ref: RecordRef,
    pub field: String,
    pub code: DefectCode,
}

/// Pushes golden values back into the cluster members where the member
/// evidently holds a degraded form of the same fact:
///
/// * an initial whose letter matches the golden first name expands to it
///   (the member was incomplete);
/// * an address is replaced outright when at least half of its street
///   tokens appear in the golden street and the zips do not disagree
///   (the member was a mistyped rendition).
///
/// Fields the member never had stay missing; repair is not invention.
pub fn backpropagate(
    members: &mut [CleansedRecord],
    golden: &GoldenRecord,
    schema: &Schema,
) -> Vec<Repair> {
    let mut repairs = Vec::new();
    let name_field = schema
        .field_of_kind(FieldKind::PersonName)
        .map(|f| f.name.clone());
    let address_field = schema
        .field_of_kind(FieldKind::Address)
        .map(|f| f.name.clone());

    for member in members.iter_mut() {
        if let (Some(name), Some(golden_name)) = (member.name.as_mut(), golden.name.as_ref()) {
            let expandable = name.first_is_initial
                && !golden_name.first_is_initial
                && golden_name.first.is_some()
                && name.first_letter() == golden_name.first_letter();
            if expandable {
                name.first = golden_name.first.clone();
                name.first_is_initial = false;
                if let Some(field) = &name_field {
                    if let Some(status) = member.field_status.get_mut(field) {
                        status.note_correction(DefectCode::Incomplete);
                    }
                    repairs.push(Repair {
                        record_ref: member.record_ref.clone(),
                        field: field.clone(),
                        code: DefectCode::Incomplete,
                    });
                }
            }
        }

        if let (Some(address), Some(golden_address)) =
            (member.address.as_ref(), golden.address.as_ref())
        {
            if address != golden_address && street_overlap_dominates(address, golden_address) {
                member.address = Some(golden_address.clone());
                if let Some(field) = &address_field {
                    if let Some(status) = member.field_status.get_mut(field) {
                        status.note_correction(DefectCode::Typo);
                    }
                    repairs.push(Repair {
                        record_ref: member.record_ref.clone(),
                        field: field.clone(),
                        code: DefectCode::Typo,
                    });
                }
            }
        }
    }
    repairs
}

fn street_overlap_dominates(
    member: &crate::standardize::StructuredAddress,
    golden: &crate::standardize::StructuredAddress,
) -> bool {
    let zips_agree = match (&member.zip, &golden.zip) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    if !zips_agree {
        return false;
    }
    let member_tokens = member
        .street
        .as_deref()
        .map(fuse_street_tokens)
        .unwrap_or_default();
    if member_tokens.is_empty() {
        return false;
    }
    let golden_tokens = golden
        .street
        .as_deref()
        .map(fuse_street_tokens)
        .unwrap_or_default();
    let shared = member_tokens.intersection(&golden_tokens).count();
    shared * 2 >= member_tokens.len()
}

/// The members whose stated identity matches the golden record's, i.e.
/// the rows that belong in a per-entity view of the source data.
pub fn members_matching_golden_identity<'a>(
    members: &'a [CleansedRecord],
    golden: &GoldenRecord,
) -> Vec<&'a CleansedRecord> {
    members
        .iter()
        .filter(|m| match (&m.author_id, &golden.author_id) {
            (Some(member_id), Some(golden_id)) => member_id == golden_id,
            _ => false,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consolidate::{consolidate, SurvivorshipPolicy};
    use crate::matching::{match_dataset, MatchConfig};
    use crate::model::FieldState;
    use crate::testsupport::cleanse_fixture;

    fn backpropagated() -> (Vec<CleansedRecord>, Vec<GoldenRecord>, Vec<Repair>) {
        let (fixture, mut records) = cleanse_fixture();
        let clusters = match_dataset(&records, &MatchConfig::default());
        let policy = SurvivorshipPolicy::default_order();
        let mut goldens = Vec::new();
        let mut repairs = Vec::new();
        for cluster in &clusters {
            let mut members: Vec<CleansedRecord> = cluster
                .member_indices
                .iter()
                .map(|&i| records[i].clone())
                .collect();
            let golden = {
                let refs: Vec<&CleansedRecord> = members.iter().collect();
                consolidate(&refs, &policy).unwrap()
            };
            repairs.extend(backpropagate(&mut members, &golden, &fixture.schema));
            for (&i, member) in cluster.member_indices.iter().zip(members) {
                records[i] = member;
            }
            goldens.push(golden);
        }
        (records, goldens, repairs)
    }

    #[test]
    fn exactly_four_cells_change() {
        let (records, _, repairs) = backpropagated();
        let changed: Vec<(u32, &str)> = repairs
            .iter()
            .map(|r| (r.record_ref.row_number, r.field.as_str()))
            .collect();
        assert_eq!(
            changed,
            vec![(3, "Address"), (4, "Name"), (6, "Address"), (8, "Address")]
        );
        assert_eq!(repairs.len(), 4);
        assert_eq!(
            records[3].name.as_ref().unwrap().first.as_deref(),
            Some("John")
        );
        assert!(!records[3].name.as_ref().unwrap().first_is_initial);
        for row in [2, 5] {
            assert_eq!(
                records[row].address.as_ref().unwrap().render_full(),
                "32904; FL; Melbourne; 123 6 th Street"
            );
        }
        assert_eq!(
            records[7].address.as_ref().unwrap().render_full(),
            "60185; IL; West Chicago; 44 Shirley Ave."
        );
    }

    #[test]
    fn unrelated_addresses_are_left_alone() {
        let (records, _, _) = backpropagated();
        // Row 4's street shares no token with the golden street.
        assert_eq!(
            records[3].address.as_ref().unwrap().render_full(),
            "32904; FL; Melbourne; 71 Pilgrim Ave."
        );
    }

    #[test]
    fn missing_fields_are_never_filled() {
        let (records, _, _) = backpropagated();
        assert_eq!(records[4].address, None);
        assert_eq!(records[1].id, None);
        assert_eq!(records[5].author_id, None);
        assert_eq!(records[2].birth_date, None);
        assert_eq!(records[7].birth_date, None);
    }

    #[test]
    fn repairs_mark_the_field_status() {
        let (records, _, _) = backpropagated();
        let status = records[3].status("Name").unwrap();
        assert_eq!(status.state, FieldState::Corrected);
        assert!(status.codes.contains(&DefectCode::Incomplete));
        let status = records[2].status("Address").unwrap();
        assert_eq!(status.state, FieldState::Corrected);
        assert!(status.codes.contains(&DefectCode::Typo));
    }

    #[test]
    fn identity_filter_keeps_rows_stating_the_golden_id() {
        let (records, goldens, _) = backpropagated();
        let smit: Vec<u32> = members_matching_golden_identity(&records[..6], &goldens[0])
            .iter()
            .map(|r| r.record_ref.row_number)
            .collect();
        assert_eq!(smit, vec![1, 2, 3]);
        let scott: Vec<u32> = members_matching_golden_identity(&records[6..], &goldens[1])
            .iter()
            .map(|r| r.record_ref.row_number)
            .collect();
        assert_eq!(scott, vec![7, 8]);
    }

    #[test]
    fn mismatched_zips_block_address_repair() {
        let (_, records) = cleanse_fixture();
        let clusters = match_dataset(&records, &MatchConfig::default());
        let policy = SurvivorshipPolicy::default_order();
        let members: Vec<&CleansedRecord> = clusters[0]
            .member_indices
            .iter()
            .map(|&i| &records[i])
            .collect();
        let golden = consolidate(&members, &policy).unwrap();
        let schema = crate::testsupport::author_schema();
        let mut record = records[2].clone();
        record.address.as_mut().unwrap().zip = Some("32901".to_string());
        let repairs = backpropagate(std::slice::from_mut(&mut record), &golden, &schema);
        assert!(repairs.is_empty());
        assert_eq!(
            record.address.as_ref().unwrap().zip.as_deref(),
            Some("32901")
        );
    }
}
