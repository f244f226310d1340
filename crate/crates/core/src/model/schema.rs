use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Semantic category of a field. Drives tokenization and standardization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    PersonName,
    Identifier,
    Date,
    Address,
    FreeText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSchema {
    pub name: String,
    pub kind: FieldKind,
    #[serde(default)]
    pub required: bool,
}

/// Ordered set of field schemas with unique names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schema {
    fields: Vec<FieldSchema>,
}

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("schema has no fields")]
    Empty,
    #[error("duplicate field name {0:?}")]
    DuplicateField(String),
}

impl Schema {
    /// Field names must be unique ignoring case, since dataset headers are
    /// matched case-insensitively.
    pub fn new(fields: Vec<FieldSchema>) -> Result<Self, SchemaError> {
        if fields.is_empty() {
            return Err(SchemaError::Empty);
        }
        let mut seen = std::collections::HashSet::new();
        for field in &fields {
            if !seen.insert(field.name.to_lowercase()) {
                return Err(SchemaError::DuplicateField(field.name.clone()));
            }
        }
        Ok(Schema { fields })
    }

    pub fn fields(&self) -> &[FieldSchema] {
        &self.fields
    }

    pub fn field(&self, name: &str) -> Option<&FieldSchema> {
        self.fields.iter().find(|f| f.name == name)
    }

    /// Case-insensitive lookup, used to map file headers onto the schema.
    pub fn field_ignore_case(&self, name: &str) -> Option<&FieldSchema> {
        self.fields
            .iter()
            .find(|f| f.name.eq_ignore_ascii_case(name))
    }

    /// First field of the given kind, if any.
    pub fn field_of_kind(&self, kind: FieldKind) -> Option<&FieldSchema> {
        self.fields.iter().find(|f| f.kind == kind)
    }
}
