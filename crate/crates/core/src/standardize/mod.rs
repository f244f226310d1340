//! Field standardizers and the record-level cleanse pass that applies
//! them, tracking a status per field.

mod address;
mod cleanse;
mod date;
mod id;
mod name;

pub use address::{fuse_street_tokens, standardize_address, AddressError, StructuredAddress};
pub use cleanse::{
    cleanse_dataset, cleanse_dataset_sequential, cleanse_record, name_evidence, CleanseContext,
    CleansedRecord, StandardizeOptions,
};
pub use date::{standardize_date, standardize_date_with, CanonicalDate, DateFailure, DateOptions};
pub use id::{standardize_id, standardize_id_with, CanonicalId, IdOptions, IdOutcome};
pub use name::{standardize_name, NameError, NameEvidence, PersonName};
