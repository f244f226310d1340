//! Lexical analysis of raw field values: lexicon-backed tokenization
//! and pattern profiling of whole columns.

mod lexicon;
mod profile;
mod token;
mod tokenizer;

pub use lexicon::{Lexicon, LexiconError, Lexicons};
pub use profile::{pattern_of, profile_field, FieldProfile};
pub use token::{Token, TokenClass};
pub use tokenizer::tokenize;
