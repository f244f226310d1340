use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::record::{DefectCode, RawRecord, RecordRef};
use super::schema::Schema;

/// Physical layout of a dataset file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DatasetFormat {
    /// Header line plus delimited rows; the delimiter (comma or
    /// semicolon) is sniffed from the header.
    Delimited,
    /// One JSON object per line, keys matching schema field names.
    Object,
}

/// Picks a format from the file extension; delimited unless the file
/// looks like line-delimited JSON.
pub fn infer_format(path: &Path) -> DatasetFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") | Some("jsonl") | Some("ndjson") => DatasetFormat::Object,
        _ => DatasetFormat::Delimited,
    }
}

/// A data row that could not be ingested. Reported, never fatal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedRow {
    pub row_number: u32,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub records: Vec<RawRecord>,
    pub skipped: Vec<SkippedRow>,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("field {0:?} in input does not match any schema field")]
    UnknownField(String),
    #[error("schema field {0:?} missing from input header")]
    MissingField(String),
    #[error("{path}: {message}")]
    Malformed { path: PathBuf, message: String },
}

/// Loads a dataset into raw records keyed by schema field names.
///
/// Blank cells (after trimming) become missing values. Rows whose shape
/// does not match the header are skipped and listed in the report.
/// Header names must map one-to-one onto schema field names, compared
/// case-insensitively; a mismatch in either direction is fatal.
/// `source_id` is the file stem; data rows are numbered from 1 in file
/// order, and skipped rows keep their number.
pub fn load_dataset(
    path: &Path,
    format: DatasetFormat,
    schema: &Schema,
) -> Result<IngestReport, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(&text);
    let source_id = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("dataset")
        .to_string();
    match format {
        DatasetFormat::Delimited => load_delimited(text, path, &source_id, schema),
        DatasetFormat::Object => load_object(text, &source_id, schema),
    }
}

/// Missing values for required fields, in schema order.
pub fn validate_against_schema(record: &RawRecord, schema: &Schema) -> Vec<(String, DefectCode)> {
    schema
        .fields()
        .iter()
        .filter(|f| f.required && record.value(&f.name).is_none())
        .map(|f| (f.name.clone(), DefectCode::MissingInfo))
        .collect()
}

fn clean_cell(cell: &str) -> Option<String> {
    let trimmed = cell.trim();
    if trimmed.is_empty() {
        None
    } else {
        Some(trimmed.to_string())
    }
}

fn sniff_delimiter(header_line: &str) -> u8 {
    let commas = header_line.matches(',').count();
    let semis = header_line.matches(';').count();
    if semis > commas {
        b';'
    } else {
        b','
    }
}

fn load_delimited(
    text: &str,
    path: &Path,
    source_id: &str,
    schema: &Schema,
) -> Result<IngestReport, IngestError> {
    let header_line = text.lines().next().unwrap_or("");
    let delimiter = sniff_delimiter(header_line);
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .from_reader(text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| IngestError::Malformed {
            path: path.to_path_buf(),
            message: format!("unreadable header: {e}"),
        })?
        .clone();
    let mut columns = Vec::with_capacity(headers.len());
    for header in headers.iter() {
        let name = header.trim();
        let field = schema
            .field_ignore_case(name)
            .ok_or_else(|| IngestError::UnknownField(name.to_string()))?;
        columns.push(field.name.clone());
    }
    for field in schema.fields() {
        if !columns.contains(&field.name) {
            return Err(IngestError::MissingField(field.name.clone()));
        }
    }

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    let mut row_number = 0u32;
    for row in reader.records() {
        row_number += 1;
        match row {
            Ok(row) => {
                if row.len() != columns.len() {
                    skipped.push(SkippedRow {
                        row_number,
                        reason: format!("expected {} cells, found {}", columns.len(), row.len()),
                    });
                    continue;
                }
                let values: BTreeMap<String, Option<String>> = columns
                    .iter()
                    .zip(row.iter())
                    .map(|(name, cell)| (name.clone(), clean_cell(cell)))
                    .collect();
                records.push(RawRecord {
                    record_ref: RecordRef::new(source_id, row_number),
                    values,
                });
            }
            Err(e) => skipped.push(SkippedRow {
                row_number,
                reason: e.to_string(),
            }),
        }
    }
    Ok(IngestReport { records, skipped })
}

fn load_object(text: &str, source_id: &str, schema: &Schema) -> Result<IngestReport, IngestError> {
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    let mut row_number = 0u32;
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        row_number += 1;
        let parsed: Result<serde_json::Value, _> = serde_json::from_str(line);
        let object = match parsed {
            Ok(serde_json::Value::Object(map)) => map,
            Ok(_) => {
                skipped.push(SkippedRow {
                    row_number,
                    reason: "line is not a JSON object".to_string(),
                });
                continue;
            }
            Err(e) => {
                skipped.push(SkippedRow {
                    row_number,
                    reason: format!("invalid JSON: {e}"),
                });
                continue;
            }
        };

        let mut values: BTreeMap<String, Option<String>> = schema
            .fields()
            .iter()
            .map(|f| (f.name.clone(), None))
            .collect();
        let mut bad_value = None;
        for (key, value) in &object {
            let field = schema
                .field_ignore_case(key)
                .ok_or_else(|| IngestError::UnknownField(key.clone()))?;
            let cell = match value {
                serde_json::Value::Null => None,
                serde_json::Value::String(s) => clean_cell(s),
                serde_json::Value::Number(n) => Some(n.to_string()),
                serde_json::Value::Bool(b) => Some(b.to_string()),
                other => {
                    bad_value = Some(format!(
                        "field {:?} holds unsupported value {other}",
                        field.name
                    ));
                    break;
                }
            };
            values.insert(field.name.clone(), cell);
        }
        if let Some(reason) = bad_value {
            skipped.push(SkippedRow { row_number, reason });
            continue;
        }
        records.push(RawRecord {
            record_ref: RecordRef::new(source_id, row_number),
            values,
        });
    }
    Ok(IngestReport { records, skipped })
}
