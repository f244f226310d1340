use std::collections::HashSet;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// A case-insensitive word list loaded from a plain-text file: one
/// entry per line, `#` starts a comment, blank lines ignored. A single
/// trailing dot is not significant, so "St." matches "st".
#[derive(Clone, Debug, Default)]
pub struct Lexicon {
    entries: HashSet<String>,
}

fn normalize(entry: &str) -> String {
    entry.strip_suffix('.').unwrap_or(entry).to_lowercase()
}

impl Lexicon {
    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self::from_entries(text.lines()))
    }

    pub fn from_entries<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let entries = entries
            .into_iter()
            .map(|line| line.as_ref().trim().to_string())
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(|line| normalize(&line))
            .collect();
        Lexicon { entries }
    }

    pub fn contains(&self, probe: &str) -> bool {
        self.entries.contains(&normalize(probe))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The word lists the tokenizer and standardizer consult, plus the set
/// of zip codes known to the gazetteer (used to tell zips from house
/// numbers).
#[derive(Clone, Debug, Default)]
pub struct Lexicons {
    pub titles: Lexicon,
    pub street_types: Lexicon,
    pub state_codes: Lexicon,
    pub given_names: Lexicon,
    pub known_zips: HashSet<String>,
}

impl Lexicons {
    pub fn set_known_zips<I, S>(&mut self, zips: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.known_zips = zips.into_iter().map(|z| z.as_ref().to_string()).collect();
    }
}
