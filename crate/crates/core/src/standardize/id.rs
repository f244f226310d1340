use serde::{Deserialize, Serialize};

/// A 16-hex-digit identifier held in compact uppercase form and rendered
/// in dashed groups of four.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalId {
    compact: String,
}

impl CanonicalId {
    pub fn compact(&self) -> &str {
        &self.compact
    }

    pub fn render(&self) -> String {
        let mut out = String::with_capacity(19);
        for (i, ch) in self.compact.chars().enumerate() {
            if i > 0 && i % 4 == 0 {
                out.push('-');
            }
            out.push(ch);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct IdOptions {
    /// Compact forms that count as "deliberately blank", compared after
    /// the same canonicalization as real values.
    pub placeholder_ids: Vec<String>,
}

impl Default for IdOptions {
    fn default() -> Self {
        IdOptions {
            placeholder_ids: vec!["0000000000000000".to_string()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdOutcome {
    Valid(CanonicalId),
    /// Syntactically fine but carries no information (e.g. all zeros).
    Placeholder,
    Invalid,
}

pub fn standardize_id(raw: &str) -> IdOutcome {
    standardize_id_with(raw, &IdOptions::default())
}

/// Strips dashes and whitespace, uppercases, then demands exactly 16 hex
/// digits. Placeholder values are recognized before the validity check so
/// a configured non-hex placeholder still matches.
pub fn standardize_id_with(raw: &str, options: &IdOptions) -> IdOutcome {
    let compact = compact_form(raw);
    if options
        .placeholder_ids
        .iter()
        .any(|p| compact_form(p) == compact)
    {
        return IdOutcome::Placeholder;
    }
    if compact.len() == 16 && compact.chars().all(|c| c.is_ascii_hexdigit()) {
        IdOutcome::Valid(CanonicalId { compact })
    } else {
        IdOutcome::Invalid
    }
}

fn compact_form(raw: &str) -> String {
    raw.chars()
        .filter(|c| !c.is_whitespace() && *c != '-')
        .map(|c| c.to_ascii_uppercase())
        .collect()
}
