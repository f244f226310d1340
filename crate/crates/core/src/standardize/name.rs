use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::FieldKind;
use crate::parse::{tokenize, Lexicons, Token, TokenClass};

/// A person name split into its parts. An initial first name is stored
/// as its bare letter with `first_is_initial` set; `render_first` puts
/// the dot back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersonName {
    pub title: Option<String>,
    pub first: Option<String>,
    pub middle: Option<String>,
    pub last: String,
    pub first_is_initial: bool,
}

impl PersonName {
    pub fn render_first(&self) -> Option<String> {
        self.first.as_ref().map(|f| {
            if self.first_is_initial {
                format!("{f}.")
            } else {
                f.clone()
            }
        })
    }

    pub fn first_letter(&self) -> Option<char> {
        self.first
            .as_ref()
            .and_then(|f| f.chars().next())
            .map(|c| c.to_ascii_uppercase())
    }

    /// Canonical rendering with every stored part, so re-standardizing
    /// the rendered value reconstructs the same name.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if let Some(title) = &self.title {
            parts.push(title.clone());
        }
        if let Some(first) = self.render_first() {
            parts.push(first);
        }
        if let Some(middle) = &self.middle {
            parts.push(middle.clone());
        }
        parts.push(self.last.clone());
        parts.join(" ")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NameError {
    #[error("no name tokens")]
    Empty,
    #[error("token {0:?} is not part of a name")]
    BadToken(String),
    #[error("tokens do not form a name")]
    Unparseable,
}

/// Dataset-level surname statistics: how often each word ends a name
/// value. A flipped pair like "Smit John" is only rearranged when the
/// trailing word looks like a given name and the leading word carries at
/// least as much surname evidence, so the decision is grounded in the
/// dataset itself rather than in the lexicon alone.
#[derive(Clone, Debug, Default)]
pub struct NameEvidence {
    surname_counts: HashMap<String, usize>,
}

impl NameEvidence {
    pub fn from_values<'a, I>(values: I, lexicons: &Lexicons) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut surname_counts = HashMap::new();
        for value in values {
            let tokens = tokenize(value, FieldKind::PersonName, lexicons);
            if let Some(last_word) = tokens.iter().rev().find(|t| t.class == TokenClass::Word) {
                *surname_counts
                    .entry(last_word.text.to_lowercase())
                    .or_insert(0) += 1;
            }
        }
        NameEvidence { surname_counts }
    }

    pub fn surname_weight(&self, word: &str) -> usize {
        self.surname_counts
            .get(&word.to_lowercase())
            .copied()
            .unwrap_or(0)
    }
}

/// Assembles a structured name from classified tokens.
///
/// Titles are stripped (the first is kept). A `Last, First` comma form is
/// honored directly. Two-word names are flipped when the evidence says
/// the words are in surname-first order; a word plus trailing initial
/// always flips, since an initial cannot be a surname.
pub fn standardize_name(
    tokens: &[Token],
    evidence: &NameEvidence,
    lexicons: &Lexicons,
) -> Result<PersonName, NameError> {
    if let Some(bad) = tokens.iter().find(|t| t.class == TokenClass::Unknown) {
        return Err(NameError::BadToken(bad.text.clone()));
    }

    let mut title: Option<String> = None;
    let mut groups: Vec<Vec<&Token>> = vec![Vec::new()];
    for token in tokens {
        match token.class {
            TokenClass::Title => {
                if title.is_none() {
                    title = Some(token.text.clone());
                }
            }
            TokenClass::Separator => {
                if !groups.last().unwrap().is_empty() {
                    groups.push(Vec::new());
                }
            }
            _ => groups.last_mut().unwrap().push(token),
        }
    }
    groups.retain(|g| !g.is_empty());

    match groups.len() {
        0 => Err(NameError::Empty),
        1 => from_ordered(title, &groups[0], evidence, lexicons),
        2 => from_comma_form(title, &groups[0], &groups[1]),
        _ => Err(NameError::Unparseable),
    }
}

fn from_comma_form(
    title: Option<String>,
    last_part: &[&Token],
    given_part: &[&Token],
) -> Result<PersonName, NameError> {
    if last_part.iter().any(|t| t.class != TokenClass::Word) {
        return Err(NameError::Unparseable);
    }
    let last = last_part
        .iter()
        .map(|t| t.text.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    let (first, first_is_initial) = first_of(given_part[0]);
    let middle = join_middles(&given_part[1..]);
    Ok(PersonName {
        title,
        first: Some(first),
        middle,
        last,
        first_is_initial,
    })
}

fn from_ordered(
    title: Option<String>,
    tokens: &[&Token],
    evidence: &NameEvidence,
    lexicons: &Lexicons,
) -> Result<PersonName, NameError> {
    match tokens {
        [] => Err(NameError::Empty),
        [only] if only.class == TokenClass::Word => Ok(PersonName {
            title,
            first: None,
            middle: None,
            last: only.text.clone(),
            first_is_initial: false,
        }),
        [_] => Err(NameError::Unparseable),
        [a, b] => {
            let (first_token, last_token) = match (a.class, b.class) {
                (TokenClass::Initial, TokenClass::Word) => (*a, *b),
                (TokenClass::Word, TokenClass::Initial) => (*b, *a),
                (TokenClass::Word, TokenClass::Word) => {
                    if should_flip(a, b, evidence, lexicons) {
                        (*b, *a)
                    } else {
                        (*a, *b)
                    }
                }
                _ => return Err(NameError::Unparseable),
            };
            let (first, first_is_initial) = first_of(first_token);
            Ok(PersonName {
                title,
                first: Some(first),
                middle: None,
                last: last_token.text.clone(),
                first_is_initial,
            })
        }
        [head, tail @ ..] => {
            let last = tail.last().unwrap();
            if last.class != TokenClass::Word {
                return Err(NameError::Unparseable);
            }
            let (first, first_is_initial) = first_of(head);
            Ok(PersonName {
                title,
                first: Some(first),
                middle: join_middles(&tail[..tail.len() - 1]),
                last: last.text.clone(),
                first_is_initial,
            })
        }
    }
}

fn should_flip(a: &Token, b: &Token, evidence: &NameEvidence, lexicons: &Lexicons) -> bool {
    lexicons.given_names.contains(&b.text)
        && !lexicons.given_names.contains(&a.text)
        && evidence.surname_weight(&a.text) >= evidence.surname_weight(&b.text)
}

fn first_of(token: &Token) -> (String, bool) {
    if token.class == TokenClass::Initial {
        let letter = token.text.chars().next().unwrap().to_ascii_uppercase();
        (letter.to_string(), true)
    } else {
        (token.text.clone(), false)
    }
}

fn join_middles(tokens: &[&Token]) -> Option<String> {
    if tokens.is_empty() {
        None
    } else {
        Some(
            tokens
                .iter()
                .map(|t| t.text.as_str())
                .collect::<Vec<_>>()
                .join(" "),
        )
    }
}
