use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TokenClass {
    Word,
    Initial,
    Title,
    Number,
    OrdinalSuffix,
    DatePart,
    Zip,
    StateCode,
    StreetType,
    Separator,
    Unknown,
}

/// One token of a raw value. `start..end` is the byte span in the raw
/// string; spans never overlap and the text between consecutive spans
/// is whitespace only, so joining token texts with the original
/// inter-token characters reproduces the raw value exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    pub class: TokenClass,
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn new(text: impl Into<String>, class: TokenClass, start: usize) -> Self {
        let text = text.into();
        let end = start + text.len();
        Token {
            text,
            class,
            start,
            end,
        }
    }
}
