use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GazetteerError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("duplicate zip {zip:?} in gazetteer")]
    DuplicateZip { zip: String },
    #[error("{path}: {message}")]
    Malformed { path: PathBuf, message: String },
}

/// Zip → (city, state) lookup table. Loaded from a CSV with header
/// `zip,city,state`; duplicate zips are fatal, and an empty table is
/// rejected because every consumer assumes at least one entry.
#[derive(Clone, Debug, Default)]
pub struct Gazetteer {
    by_zip: BTreeMap<String, (String, String)>,
}

impl Gazetteer {
    pub fn load(path: &Path) -> Result<Self, GazetteerError> {
        let mut reader = csv::ReaderBuilder::new()
            .from_path(path)
            .map_err(|e| match e.kind() {
                csv::ErrorKind::Io(_) => GazetteerError::Io {
                    path: path.to_path_buf(),
                    source: std::io::Error::other(e.to_string()),
                },
                _ => GazetteerError::Malformed {
                    path: path.to_path_buf(),
                    message: e.to_string(),
                },
            })?;
        let mut entries = Vec::new();
        for row in reader.records() {
            let row = row.map_err(|e| GazetteerError::Malformed {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
            if row.len() != 3 {
                return Err(GazetteerError::Malformed {
                    path: path.to_path_buf(),
                    message: format!("expected 3 columns, found {}", row.len()),
                });
            }
            entries.push((
                row[0].trim().to_string(),
                row[1].trim().to_string(),
                row[2].trim().to_string(),
            ));
        }
        let gazetteer = Self::from_entries(entries)?;
        if gazetteer.by_zip.is_empty() {
            return Err(GazetteerError::Malformed {
                path: path.to_path_buf(),
                message: "gazetteer has no entries".to_string(),
            });
        }
        Ok(gazetteer)
    }

    pub fn from_entries<I>(entries: I) -> Result<Self, GazetteerError>
    where
        I: IntoIterator<Item = (String, String, String)>,
    {
        let mut by_zip = BTreeMap::new();
        for (zip, city, state) in entries {
            if by_zip.insert(zip.clone(), (city, state)).is_some() {
                return Err(GazetteerError::DuplicateZip { zip });
            }
        }
        Ok(Gazetteer { by_zip })
    }

    pub fn lookup(&self, zip: &str) -> Option<(&str, &str)> {
        self.by_zip
            .get(zip)
            .map(|(city, state)| (city.as_str(), state.as_str()))
    }

    /// Reverse lookup, only when exactly one zip maps to the pair.
    pub fn zip_for(&self, city: &str, state: &str) -> Option<&str> {
        let mut hits = self
            .by_zip
            .iter()
            .filter(|(_, (c, s))| c.eq_ignore_ascii_case(city) && s.eq_ignore_ascii_case(state));
        let first = hits.next()?;
        if hits.next().is_some() {
            None
        } else {
            Some(first.0)
        }
    }

    pub fn known_zips(&self) -> impl Iterator<Item = &str> {
        self.by_zip.keys().map(|z| z.as_str())
    }

    pub fn len(&self) -> usize {
        self.by_zip.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_zip.is_empty()
    }
}
