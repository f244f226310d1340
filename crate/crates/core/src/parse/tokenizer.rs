use super::lexicon::Lexicons;
use super::token::{Token, TokenClass};
use crate::model::FieldKind;

const ORDINAL_SUFFIXES: [&str; 4] = ["st", "nd", "rd", "th"];

/// Splits a raw value into classified tokens covering the whole string.
///
/// Commas and semicolons become `SEPARATOR` tokens; runs of whitespace
/// are the only text left between spans. Classification depends on the
/// field kind: titles and initials are only meaningful in person names,
/// street types, state codes, and zips only in addresses, and numeric
/// shapes in date fields collapse into `DATE_PART` tokens.
pub fn tokenize(value: &str, kind: FieldKind, lexicons: &Lexicons) -> Vec<Token> {
    let mut tokens: Vec<Token> = Vec::new();
    let mut chunk_start: Option<usize> = None;

    let flush = |tokens: &mut Vec<Token>, start: usize, end: usize, value: &str| {
        classify_chunk(&value[start..end], start, kind, lexicons, tokens);
    };

    for (pos, ch) in value.char_indices() {
        if ch.is_whitespace() || ch == ',' || ch == ';' {
            if let Some(start) = chunk_start.take() {
                flush(&mut tokens, start, pos, value);
            }
            if ch == ',' || ch == ';' {
                tokens.push(Token::new(ch.to_string(), TokenClass::Separator, pos));
            }
        } else if chunk_start.is_none() {
            chunk_start = Some(pos);
        }
    }
    if let Some(start) = chunk_start {
        flush(&mut tokens, start, value.len(), value);
    }
    tokens
}

fn classify_chunk(
    chunk: &str,
    start: usize,
    kind: FieldKind,
    lexicons: &Lexicons,
    tokens: &mut Vec<Token>,
) {
    let all_digits = !chunk.is_empty() && chunk.chars().all(|c| c.is_ascii_digit());

    if kind == FieldKind::Date
        && chunk.chars().any(|c| c.is_ascii_digit())
        && chunk
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '/' | '-'))
    {
        tokens.push(Token::new(chunk, TokenClass::DatePart, start));
        return;
    }

    // "6th" splits into a number and its ordinal suffix.
    if let Some(digits) = fused_ordinal_digits(chunk) {
        tokens.push(Token::new(&chunk[..digits], TokenClass::Number, start));
        tokens.push(Token::new(
            &chunk[digits..],
            TokenClass::OrdinalSuffix,
            start + digits,
        ));
        return;
    }

    if all_digits {
        let class = if kind == FieldKind::Address
            && chunk.len() == 5
            && lexicons.known_zips.contains(chunk)
        {
            TokenClass::Zip
        } else {
            TokenClass::Number
        };
        tokens.push(Token::new(chunk, class, start));
        return;
    }

    // "6 th": a bare suffix directly after a number.
    let lowered = chunk.to_lowercase();
    if ORDINAL_SUFFIXES.contains(&lowered.as_str())
        && tokens.last().map(|t| t.class) == Some(TokenClass::Number)
    {
        tokens.push(Token::new(chunk, TokenClass::OrdinalSuffix, start));
        return;
    }

    let class = match kind {
        FieldKind::PersonName => {
            if lexicons.titles.contains(chunk) {
                TokenClass::Title
            } else if is_initial(chunk) {
                TokenClass::Initial
            } else if is_wordlike(chunk) {
                TokenClass::Word
            } else {
                TokenClass::Unknown
            }
        }
        FieldKind::Address => {
            if lexicons.street_types.contains(chunk) {
                TokenClass::StreetType
            } else if lexicons.state_codes.contains(chunk) {
                TokenClass::StateCode
            } else if is_wordlike(chunk) {
                TokenClass::Word
            } else {
                TokenClass::Unknown
            }
        }
        _ => {
            if is_wordlike(chunk) {
                TokenClass::Word
            } else {
                TokenClass::Unknown
            }
        }
    };
    tokens.push(Token::new(chunk, class, start));
}

fn fused_ordinal_digits(chunk: &str) -> Option<usize> {
    let digits = chunk.chars().take_while(|c| c.is_ascii_digit()).count();
    if digits == 0 {
        return None;
    }
    let rest = &chunk[digits..];
    ORDINAL_SUFFIXES
        .contains(&rest.to_lowercase().as_str())
        .then_some(digits)
}

fn is_initial(chunk: &str) -> bool {
    let mut chars = chunk.chars();
    match (chars.next(), chars.next(), chars.next()) {
        (Some(a), None, _) => a.is_alphabetic(),
        (Some(a), Some('.'), None) => a.is_alphabetic(),
        _ => false,
    }
}

fn is_wordlike(chunk: &str) -> bool {
    let mut chars = chunk.chars();
    match chars.next() {
        Some(first) if first.is_alphabetic() => chunk
            .chars()
            .all(|c| c.is_alphabetic() || matches!(c, '.' | '\'' | '-')),
        _ => false,
    }
}
