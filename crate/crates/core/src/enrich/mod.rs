//! Gazetteer-backed address enrichment: fills city, state, or zip that
//! standardization could not supply, and reports what it could not
//! reconcile. Existing values are never overwritten.

mod gazetteer;

use serde::{Deserialize, Serialize};

pub use gazetteer::{Gazetteer, GazetteerError};

use crate::model::RecordRef;
use crate::standardize::CleansedRecord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EnrichIssue {
    /// The record's zip has no gazetteer entry.
    GazetteerMiss { zip: String },
    /// The record names a city that contradicts the gazetteer entry for
    /// its zip. The stated value wins; the conflict is only reported.
    CityConflict {
        zip: String,
        stated: String,
        gazetteer: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetIssue {
    pub record_ref: RecordRef,
    pub issue: EnrichIssue,
}

/// Fills what the gazetteer can add to one record. Only absent parts are
/// written: a present city, state, or zip is left alone even when the
/// gazetteer disagrees, so enrichment is monotone and repeat runs are
/// no-ops.
pub fn enrich_record(record: &mut CleansedRecord, gazetteer: &Gazetteer) -> Vec<EnrichIssue> {
    let mut issues = Vec::new();
    let Some(address) = record.address.as_mut() else {
        return issues;
    };

    if let Some(zip) = &address.zip {
        match gazetteer.lookup(zip) {
            None => issues.push(EnrichIssue::GazetteerMiss { zip: zip.clone() }),
            Some((gaz_city, gaz_state)) => {
                match &address.city {
                    None => address.city = Some(gaz_city.to_string()),
                    Some(city) if !city.eq_ignore_ascii_case(gaz_city) => {
                        issues.push(EnrichIssue::CityConflict {
                            zip: zip.clone(),
                            stated: city.clone(),
                            gazetteer: gaz_city.to_string(),
                        });
                    }
                    Some(_) => {}
                }
                if address.state.is_none() {
                    address.state = Some(gaz_state.to_string());
                }
            }
        }
    } else if let (Some(city), Some(state)) = (&address.city, &address.state) {
        if let Some(zip) = gazetteer.zip_for(city, state) {
            address.zip = Some(zip.to_string());
        }
    }
    issues
}

pub fn enrich_dataset_sequential(
    records: &mut [CleansedRecord],
    gazetteer: &Gazetteer,
) -> Vec<DatasetIssue> {
    records
        .iter_mut()
        .flat_map(|record| {
            let record_ref = record.record_ref.clone();
            enrich_record(record, gazetteer)
                .into_iter()
                .map(move |issue| DatasetIssue {
                    record_ref: record_ref.clone(),
                    issue,
                })
        })
        .collect()
}

#[cfg(feature = "parallel")]
pub fn enrich_dataset(records: &mut [CleansedRecord], gazetteer: &Gazetteer) -> Vec<DatasetIssue> {
    use rayon::prelude::*;

    let mut issues: Vec<DatasetIssue> = records
        .par_iter_mut()
        .flat_map_iter(|record| {
            let record_ref = record.record_ref.clone();
            enrich_record(record, gazetteer)
                .into_iter()
                .map(move |issue| DatasetIssue {
                    record_ref: record_ref.clone(),
                    issue,
                })
        })
        .collect();
    issues.sort_by(|a, b| a.record_ref.cmp(&b.record_ref));
    issues
}

#[cfg(not(feature = "parallel"))]
pub fn enrich_dataset(records: &mut [CleansedRecord], gazetteer: &Gazetteer) -> Vec<DatasetIssue> {
    enrich_dataset_sequential(records, gazetteer)
}
