use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Stable identity of a source row: originating dataset plus 1-based
/// data-row position. Ordering on this pair is the tie-breaker used
/// everywhere determinism matters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RecordRef {
    pub source_id: String,
    pub row_number: u32,
}

impl RecordRef {
    pub fn new(source_id: impl Into<String>, row_number: u32) -> Self {
        RecordRef {
            source_id: source_id.into(),
            row_number,
        }
    }
}

impl fmt::Display for RecordRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.source_id, self.row_number)
    }
}

/// One ingested row. Values are keyed by schema field name; a missing
/// cell is `None`. Cell text is trimmed on ingest, internal whitespace
/// is preserved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRecord {
    pub record_ref: RecordRef,
    pub values: BTreeMap<String, Option<String>>,
}

impl RawRecord {
    pub fn value(&self, field: &str) -> Option<&str> {
        self.values.get(field).and_then(|v| v.as_deref())
    }
}

/// Defect taxonomy attached to field statuses and quality violations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DefectCode {
    Typo,
    MissingInfo,
    Contradictory,
    Redundant,
    Obsolete,
    Incomplete,
    Irrelevant,
    TransferFault,
    TransformFault,
}

/// Lifecycle state of one field of one record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FieldState {
    Raw,
    Valid,
    Corrected,
    Missing,
    Rejected,
}

/// State plus the defect codes that explain it. `Corrected` and
/// `Rejected` always carry at least one code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldStatus {
    pub state: FieldState,
    pub codes: Vec<DefectCode>,
}

impl FieldStatus {
    pub fn raw() -> Self {
        FieldStatus {
            state: FieldState::Raw,
            codes: Vec::new(),
        }
    }

    pub fn valid() -> Self {
        FieldStatus {
            state: FieldState::Valid,
            codes: Vec::new(),
        }
    }

    pub fn missing() -> Self {
        FieldStatus {
            state: FieldState::Missing,
            codes: Vec::new(),
        }
    }

    pub fn missing_because(code: DefectCode) -> Self {
        FieldStatus {
            state: FieldState::Missing,
            codes: vec![code],
        }
    }

    pub fn corrected(code: DefectCode) -> Self {
        FieldStatus {
            state: FieldState::Corrected,
            codes: vec![code],
        }
    }

    pub fn rejected(code: DefectCode) -> Self {
        FieldStatus {
            state: FieldState::Rejected,
            codes: vec![code],
        }
    }

    /// Marks a later repair on top of an existing status.
    pub fn note_correction(&mut self, code: DefectCode) {
        self.state = FieldState::Corrected;
        if !self.codes.contains(&code) {
            self.codes.push(code);
        }
    }
}
