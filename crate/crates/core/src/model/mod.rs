//! Dataset model: field schemas, raw records, per-field status, and the
//! defect taxonomy used by every later stage.

mod ingest;
mod record;
mod schema;

pub use ingest::{
    infer_format, load_dataset, validate_against_schema, DatasetFormat, IngestError, IngestReport,
    SkippedRow,
};
pub use record::{DefectCode, FieldState, FieldStatus, RawRecord, RecordRef};
pub use schema::{FieldKind, FieldSchema, Schema, SchemaError};
