use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::address::{standardize_address, StructuredAddress};
use super::date::{standardize_date_with, CanonicalDate, DateOptions};
use super::id::{standardize_id_with, CanonicalId, IdOptions, IdOutcome};
use super::name::{standardize_name, NameEvidence, PersonName};
use crate::enrich::Gazetteer;
use crate::model::{DefectCode, FieldKind, FieldStatus, RawRecord, RecordRef, Schema};
use crate::parse::{tokenize, Lexicons};

#[derive(Clone, Debug, Default)]
pub struct StandardizeOptions {
    pub id: IdOptions,
    pub date: DateOptions,
}

/// Everything a single-record cleanse needs to see besides the record.
#[derive(Clone, Copy)]
pub struct CleanseContext<'a> {
    pub schema: &'a Schema,
    pub lexicons: &'a Lexicons,
    pub gazetteer: &'a Gazetteer,
    pub evidence: &'a NameEvidence,
    pub options: &'a StandardizeOptions,
}

/// One record after standardization: typed values for the five semantic
/// roles plus a per-field status trail. A field that failed to
/// standardize holds `None` and a `Missing` or `Rejected` status.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CleansedRecord {
    pub record_ref: RecordRef,
    pub author_id: Option<String>,
    pub name: Option<PersonName>,
    pub id: Option<CanonicalId>,
    pub birth_date: Option<CanonicalDate>,
    pub address: Option<StructuredAddress>,
    pub field_status: BTreeMap<String, FieldStatus>,
}

impl CleansedRecord {
    pub fn status(&self, field: &str) -> Option<&FieldStatus> {
        self.field_status.get(field)
    }

    /// How many of the five roles carry a value. Used as the
    /// completeness yardstick when picking survivors.
    pub fn populated_field_count(&self) -> usize {
        usize::from(self.author_id.is_some())
            + usize::from(self.name.is_some())
            + usize::from(self.id.is_some())
            + usize::from(self.birth_date.is_some())
            + usize::from(self.address.is_some())
    }

    /// Re-renders the record as raw field values, so it can be fed back
    /// through ingestion or assessed by the same rules as source data.
    pub fn to_raw_record(&self, schema: &Schema) -> RawRecord {
        let mut values: BTreeMap<String, Option<String>> = BTreeMap::new();
        for field in schema.fields() {
            let rendered = match field.kind {
                FieldKind::FreeText => self.author_id.clone(),
                FieldKind::PersonName => self.name.as_ref().map(PersonName::render),
                FieldKind::Identifier => self.id.as_ref().map(CanonicalId::render),
                FieldKind::Date => self.birth_date.as_ref().map(|d| d.render()),
                FieldKind::Address => self.address.as_ref().map(|a| a.render_full()),
            };
            values.insert(field.name.clone(), rendered);
        }
        RawRecord {
            record_ref: self.record_ref.clone(),
            values,
        }
    }
}

pub fn cleanse_record(record: &RawRecord, ctx: CleanseContext<'_>) -> CleansedRecord {
    let mut field_status = BTreeMap::new();
    let mut author_id = None;
    let mut name = None;
    let mut id = None;
    let mut birth_date = None;
    let mut address = None;

    for field in ctx.schema.fields() {
        let raw = record.value(&field.name);
        let status = match field.kind {
            FieldKind::FreeText => match raw {
                None => FieldStatus::missing(),
                Some(value) => {
                    author_id = Some(value.to_string());
                    FieldStatus::valid()
                }
            },
            FieldKind::PersonName => match raw {
                None => FieldStatus::missing(),
                Some(value) => {
                    let tokens = tokenize(value, FieldKind::PersonName, ctx.lexicons);
                    match standardize_name(&tokens, ctx.evidence, ctx.lexicons) {
                        Ok(parsed) => {
                            let status = rendered_status(&parsed.render(), value);
                            name = Some(parsed);
                            status
                        }
                        Err(_) => FieldStatus::rejected(DefectCode::Typo),
                    }
                }
            },
            FieldKind::Identifier => match raw {
                None => FieldStatus::missing(),
                Some(value) => match standardize_id_with(value, &ctx.options.id) {
                    IdOutcome::Valid(canonical) => {
                        let status = rendered_status(&canonical.render(), value);
                        id = Some(canonical);
                        status
                    }
                    IdOutcome::Placeholder => FieldStatus::missing_because(DefectCode::Incomplete),
                    IdOutcome::Invalid => FieldStatus::rejected(DefectCode::Typo),
                },
            },
            FieldKind::Date => match raw {
                None => FieldStatus::missing(),
                Some(value) => match standardize_date_with(value, &ctx.options.date) {
                    Ok(canonical) => {
                        let status = rendered_status(&canonical.render(), value);
                        birth_date = Some(canonical);
                        status
                    }
                    Err(failure) => FieldStatus::missing_because(failure.code()),
                },
            },
            FieldKind::Address => match raw {
                None => FieldStatus::missing(),
                Some(value) => {
                    let tokens = tokenize(value, FieldKind::Address, ctx.lexicons);
                    match standardize_address(&tokens, ctx.gazetteer) {
                        Ok(parsed) => {
                            let status = rendered_status(&parsed.render_full(), value);
                            address = Some(parsed);
                            status
                        }
                        Err(_) => FieldStatus::rejected(DefectCode::Typo),
                    }
                }
            },
        };
        field_status.insert(field.name.clone(), status);
    }

    CleansedRecord {
        record_ref: record.record_ref.clone(),
        author_id,
        name,
        id,
        birth_date,
        address,
        field_status,
    }
}

fn rendered_status(canonical: &str, raw: &str) -> FieldStatus {
    if canonical == raw {
        FieldStatus::valid()
    } else {
        FieldStatus::corrected(DefectCode::TransformFault)
    }
}

pub fn name_evidence(records: &[RawRecord], schema: &Schema, lexicons: &Lexicons) -> NameEvidence {
    match schema.field_of_kind(FieldKind::PersonName) {
        Some(field) => NameEvidence::from_values(
            records.iter().filter_map(|r| r.value(&field.name)),
            lexicons,
        ),
        None => NameEvidence::default(),
    }
}

pub fn cleanse_dataset_sequential(
    records: &[RawRecord],
    schema: &Schema,
    lexicons: &Lexicons,
    gazetteer: &Gazetteer,
    options: &StandardizeOptions,
) -> Vec<CleansedRecord> {
    let evidence = name_evidence(records, schema, lexicons);
    let ctx = CleanseContext {
        schema,
        lexicons,
        gazetteer,
        evidence: &evidence,
        options,
    };
    records.iter().map(|r| cleanse_record(r, ctx)).collect()
}

#[cfg(feature = "parallel")]
pub fn cleanse_dataset(
    records: &[RawRecord],
    schema: &Schema,
    lexicons: &Lexicons,
    gazetteer: &Gazetteer,
    options: &StandardizeOptions,
) -> Vec<CleansedRecord> {
    use rayon::prelude::*;

    let evidence = name_evidence(records, schema, lexicons);
    let ctx = CleanseContext {
        schema,
        lexicons,
        gazetteer,
        evidence: &evidence,
        options,
    };
    records.par_iter().map(|r| cleanse_record(r, ctx)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn cleanse_dataset(
    records: &[RawRecord],
    schema: &Schema,
    lexicons: &Lexicons,
    gazetteer: &Gazetteer,
    options: &StandardizeOptions,
) -> Vec<CleansedRecord> {
    cleanse_dataset_sequential(records, schema, lexicons, gazetteer, options)
}
