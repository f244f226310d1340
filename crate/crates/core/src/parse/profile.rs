use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::lexicon::Lexicons;
use super::tokenizer::tokenize;
use crate::model::{FieldSchema, RawRecord};

/// Shape summary of one column: how many rows are missing, how many
/// distinct raw values occur, and a histogram of value patterns
/// (digits as `N`, letters as `A`, everything else literal).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldProfile {
    pub field: String,
    pub pattern_histogram: BTreeMap<String, usize>,
    pub distinct_count: usize,
    pub missing_count: usize,
}

/// Pattern of a single value: each token is mapped character-wise and
/// the original gaps between tokens are preserved.
pub fn pattern_of(value: &str, field: &FieldSchema, lexicons: &Lexicons) -> String {
    let tokens = tokenize(value, field.kind, lexicons);
    let mut pattern = String::with_capacity(value.len());
    let mut cursor = 0;
    for token in &tokens {
        pattern.push_str(&value[cursor..token.start]);
        for ch in token.text.chars() {
            if ch.is_ascii_digit() {
                pattern.push('N');
            } else if ch.is_alphabetic() {
                pattern.push('A');
            } else {
                pattern.push(ch);
            }
        }
        cursor = token.end;
    }
    pattern.push_str(&value[cursor..]);
    pattern
}

/// Profiles one column across a dataset. Pattern counts plus the
/// missing count always sum to the number of records.
pub fn profile_field(
    records: &[RawRecord],
    field: &FieldSchema,
    lexicons: &Lexicons,
) -> FieldProfile {
    let mut pattern_histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut distinct: BTreeSet<&str> = BTreeSet::new();
    let mut missing_count = 0;
    for record in records {
        match record.value(&field.name) {
            None => missing_count += 1,
            Some(value) => {
                *pattern_histogram
                    .entry(pattern_of(value, field, lexicons))
                    .or_insert(0) += 1;
                distinct.insert(value);
            }
        }
    }
    FieldProfile {
        field: field.name.clone(),
        pattern_histogram,
        distinct_count: distinct.len(),
        missing_count,
    }
}
