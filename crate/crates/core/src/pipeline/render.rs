use crate::consolidate::GoldenRecord;
use crate::standardize::CleansedRecord;

/// Column order of the cleansed, consolidated, and golden tables.
pub const TABLE_HEADER: [&str; 6] = [
    "Author ID",
    "First",
    "Last",
    "ORCID",
    "Birth Date",
    "Address",
];

/// The enriched table splits the zip out into its own trailing column.
pub const ENRICHED_HEADER: [&str; 7] = [
    "Author ID",
    "First",
    "Last",
    "ORCID",
    "Birth Date",
    "Address",
    "Zip",
];

pub fn cleansed_row(record: &CleansedRecord) -> [String; 6] {
    [
        record.author_id.clone().unwrap_or_default(),
        record
            .name
            .as_ref()
            .and_then(|n| n.render_first())
            .unwrap_or_default(),
        record
            .name
            .as_ref()
            .map(|n| n.last.clone())
            .unwrap_or_default(),
        record.id.as_ref().map(|i| i.render()).unwrap_or_default(),
        record
            .birth_date
            .as_ref()
            .map(|d| d.render())
            .unwrap_or_default(),
        record
            .address
            .as_ref()
            .map(|a| a.render_full())
            .unwrap_or_default(),
    ]
}

pub fn enriched_row(record: &CleansedRecord) -> [String; 7] {
    let base = cleansed_row(record);
    let [author_id, first, last, orcid, birth_date, _] = base;
    [
        author_id,
        first,
        last,
        orcid,
        birth_date,
        record
            .address
            .as_ref()
            .map(|a| a.render_without_zip())
            .unwrap_or_default(),
        record
            .address
            .as_ref()
            .and_then(|a| a.zip.clone())
            .unwrap_or_default(),
    ]
}

pub fn golden_row(golden: &GoldenRecord) -> [String; 6] {
    [
        golden.author_id.clone().unwrap_or_default(),
        golden
            .name
            .as_ref()
            .and_then(|n| n.render_first())
            .unwrap_or_default(),
        golden
            .name
            .as_ref()
            .map(|n| n.last.clone())
            .unwrap_or_default(),
        golden.id.as_ref().map(|i| i.render()).unwrap_or_default(),
        golden
            .birth_date
            .as_ref()
            .map(|d| d.render())
            .unwrap_or_default(),
        golden
            .address
            .as_ref()
            .map(|a| a.render_full())
            .unwrap_or_default(),
    ]
}
