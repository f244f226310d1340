use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enrich::Gazetteer;
use crate::parse::{Token, TokenClass};

/// An address split into street, city, state, and zip. Rendered forms
/// join the present parts most-significant-first with `"; "`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredAddress {
    pub street: Option<String>,
    pub city: Option<String>,
    pub state: Option<String>,
    pub zip: Option<String>,
}

impl StructuredAddress {
    pub fn render_full(&self) -> String {
        self.render_parts(true)
    }

    pub fn render_without_zip(&self) -> String {
        self.render_parts(false)
    }

    fn render_parts(&self, with_zip: bool) -> String {
        let mut parts: Vec<&str> = Vec::new();
        if with_zip {
            if let Some(zip) = &self.zip {
                parts.push(zip);
            }
        }
        for part in [&self.state, &self.city, &self.street]
            .into_iter()
            .flatten()
        {
            parts.push(part);
        }
        parts.join("; ")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AddressError {
    #[error("no address structure recognized")]
    Unparseable,
}

/// Rebuilds a structured address from classified tokens.
///
/// The value is read as separator-delimited segments. The first segment
/// holding a street type becomes the street, cut at its last street
/// type. A word run following that street type names the city, else a
/// segment of bare words does. Tokens stranded after the zip are pulled
/// back into the street: a lone number becomes the missing house number,
/// anything else is appended where it stood. City and state fall back to
/// the gazetteer entry for the zip.
pub fn standardize_address(
    tokens: &[Token],
    gazetteer: &Gazetteer,
) -> Result<StructuredAddress, AddressError> {
    let mut segments: Vec<Vec<usize>> = vec![Vec::new()];
    for (i, token) in tokens.iter().enumerate() {
        if token.class == TokenClass::Separator {
            if !segments.last().unwrap().is_empty() {
                segments.push(Vec::new());
            }
        } else {
            segments.last_mut().unwrap().push(i);
        }
    }
    segments.retain(|s| !s.is_empty());

    let zip_idx = tokens.iter().position(|t| t.class == TokenClass::Zip);
    let zip = zip_idx.map(|i| tokens[i].text.clone());

    let mut consumed = vec![false; tokens.len()];
    if let Some(zi) = zip_idx {
        consumed[zi] = true;
    }

    let street_seg = segments.iter().position(|seg| {
        seg.iter()
            .any(|&i| tokens[i].class == TokenClass::StreetType)
    });

    let mut street_tokens: Vec<usize> = Vec::new();
    let mut explicit_city: Option<String> = None;
    if let Some(seg_idx) = street_seg {
        let seg = &segments[seg_idx];
        let last_type = seg
            .iter()
            .rposition(|&i| tokens[i].class == TokenClass::StreetType)
            .unwrap();
        for &i in &seg[..=last_type] {
            consumed[i] = true;
            if !matches!(tokens[i].class, TokenClass::Zip | TokenClass::StateCode) {
                street_tokens.push(i);
            }
        }
        let mut run: Vec<usize> = Vec::new();
        for &i in &seg[last_type + 1..] {
            if tokens[i].class == TokenClass::Word {
                run.push(i);
            } else {
                break;
            }
        }
        if !run.is_empty() {
            for &i in &run {
                consumed[i] = true;
            }
            explicit_city = Some(join_texts(tokens, &run));
        }
    }

    if explicit_city.is_none() {
        for (seg_idx, seg) in segments.iter().enumerate() {
            if Some(seg_idx) == street_seg {
                continue;
            }
            let words: Vec<usize> = seg
                .iter()
                .copied()
                .filter(|&i| !matches!(tokens[i].class, TokenClass::Zip | TokenClass::StateCode))
                .collect();
            if !words.is_empty() && words.iter().all(|&i| tokens[i].class == TokenClass::Word) {
                for &i in &words {
                    consumed[i] = true;
                }
                explicit_city = Some(join_texts(tokens, &words));
                break;
            }
        }
    }

    let explicit_state = tokens
        .iter()
        .find(|t| t.class == TokenClass::StateCode)
        .map(|t| t.text.clone());

    // Pull post-zip strays back into the street.
    let mut displaced_number: Option<usize> = None;
    let mut leftovers: Vec<usize> = Vec::new();
    if let Some(zi) = zip_idx {
        for i in zi + 1..tokens.len() {
            if consumed[i]
                || matches!(
                    tokens[i].class,
                    TokenClass::Separator | TokenClass::StateCode | TokenClass::Zip
                )
            {
                continue;
            }
            let bare_number = tokens[i].class == TokenClass::Number
                && tokens.get(i + 1).map(|t| t.class) != Some(TokenClass::OrdinalSuffix);
            if displaced_number.is_none()
                && bare_number
                && !street_tokens.is_empty()
                && !starts_with_house_number(tokens, &street_tokens)
            {
                displaced_number = Some(i);
            } else {
                leftovers.push(i);
            }
        }
    }

    let street = if street_tokens.is_empty() && displaced_number.is_none() && leftovers.is_empty() {
        None
    } else if street_tokens.is_empty() {
        // No street type anywhere: strays have nothing to attach to.
        None
    } else {
        let mut ordered: Vec<usize> = Vec::new();
        ordered.extend(displaced_number);
        ordered.extend(&street_tokens);
        ordered.extend(&leftovers);
        Some(join_texts(tokens, &ordered))
    };

    let mut city = explicit_city;
    let mut state = None;
    if let Some(zip) = &zip {
        if let Some((gaz_city, gaz_state)) = gazetteer.lookup(zip) {
            state = Some(gaz_state.to_string());
            if city.is_none() {
                city = Some(gaz_city.to_string());
            }
        }
    }
    if state.is_none() {
        state = explicit_state;
    }

    let address = StructuredAddress {
        street,
        city,
        state,
        zip,
    };
    if address.street.is_none()
        && address.city.is_none()
        && address.state.is_none()
        && address.zip.is_none()
    {
        return Err(AddressError::Unparseable);
    }
    Ok(address)
}

fn starts_with_house_number(tokens: &[Token], street_tokens: &[usize]) -> bool {
    let Some(&first) = street_tokens.first() else {
        return false;
    };
    tokens[first].class == TokenClass::Number
        && street_tokens.get(1).map(|&i| tokens[i].class) != Some(TokenClass::OrdinalSuffix)
}

fn join_texts(tokens: &[Token], indices: &[usize]) -> String {
    indices
        .iter()
        .map(|&i| tokens[i].text.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Street text reduced to a comparable token set: lowercased, with a
/// number and its trailing ordinal suffix fused ("6 th" and "6th" meet
/// at "6th").
pub fn fuse_street_tokens(street: &str) -> BTreeSet<String> {
    const SUFFIXES: [&str; 4] = ["st", "nd", "rd", "th"];
    let chunks: Vec<&str> = street.split_whitespace().collect();
    let mut fused = BTreeSet::new();
    let mut i = 0;
    while i < chunks.len() {
        let chunk = chunks[i].to_lowercase();
        let next = chunks.get(i + 1).map(|c| c.to_lowercase());
        let chunk_is_number = !chunk.is_empty() && chunk.chars().all(|c| c.is_ascii_digit());
        if chunk_is_number && next.as_deref().is_some_and(|n| SUFFIXES.contains(&n)) {
            fused.insert(format!("{chunk}{}", next.unwrap()));
            i += 2;
        } else {
            fused.insert(chunk);
            i += 1;
        }
    }
    fused
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrich::Gazetteer;
    use crate::model::FieldKind;
    use crate::parse::{tokenize, Lexicon, Lexicons};

    fn lexicons() -> Lexicons {
        let mut lexicons = Lexicons {
            street_types: Lexicon::from_entries(["Street", "St.", "Ave.", "Avenue"]),
            state_codes: Lexicon::from_entries(["FL", "IL"]),
            ..Lexicons::default()
        };
        lexicons.set_known_zips(["32904", "60185"]);
        lexicons
    }

    fn gazetteer() -> Gazetteer {
        Gazetteer::from_entries([
            ("32904".into(), "Melbourne".into(), "FL".into()),
            ("60185".into(), "West Chicago".into(), "IL".into()),
        ])
        .unwrap()
    }

    fn parse(raw: &str) -> StructuredAddress {
        let lexicons = lexicons();
        let tokens = tokenize(raw, FieldKind::Address, &lexicons);
        standardize_address(&tokens, &gazetteer()).unwrap()
    }

    #[test]
    fn separated_street_city_zip() {
        let address = parse("123 6 th Street, Melbourne, 32904");
        assert_eq!(address.street.as_deref(), Some("123 6 th Street"));
        assert_eq!(address.city.as_deref(), Some("Melbourne"));
        assert_eq!(address.state.as_deref(), Some("FL"));
        assert_eq!(address.zip.as_deref(), Some("32904"));
        assert_eq!(
            address.render_full(),
            "32904; FL; Melbourne; 123 6 th Street"
        );
        assert_eq!(
            address.render_without_zip(),
            "FL; Melbourne; 123 6 th Street"
        );
    }

    #[test]
    fn displaced_house_number_returns_home() {
        let address = parse("6 th Street, 32904 123");
        assert_eq!(address.street.as_deref(), Some("123 6 th Street"));
        assert_eq!(
            address.render_full(),
            "32904; FL; Melbourne; 123 6 th Street"
        );
    }

    #[test]
    fn post_zip_strays_append_to_the_street() {
        let address = parse("10 Street 32904 6 th");
        assert_eq!(address.street.as_deref(), Some("10 Street 6 th"));
        assert_eq!(
            address.render_full(),
            "32904; FL; Melbourne; 10 Street 6 th"
        );

        let address = parse("Street, 32904 6 th US");
        assert_eq!(address.street.as_deref(), Some("Street 6 th US"));
    }

    #[test]
    fn ordinal_bound_numbers_are_not_house_numbers() {
        // "6" binds to "th", so it neither blocks nor supplies the
        // displaced house number; "123" does.
        let address = parse("6 th Street, 32904 123");
        assert_eq!(address.street.as_deref(), Some("123 6 th Street"));
        // An existing house number keeps later numbers out front.
        let address = parse("10 Street 32904 123");
        assert_eq!(address.street.as_deref(), Some("10 Street 123"));
    }

    #[test]
    fn trailing_words_after_street_type_name_the_city() {
        let address = parse("44 Shirley Ave. West Chicago 60185");
        assert_eq!(address.street.as_deref(), Some("44 Shirley Ave."));
        assert_eq!(address.city.as_deref(), Some("West Chicago"));
        assert_eq!(address.state.as_deref(), Some("IL"));
        assert_eq!(
            address.render_full(),
            "60185; IL; West Chicago; 44 Shirley Ave."
        );
    }

    #[test]
    fn gazetteer_fills_city_and_state_from_the_zip() {
        let address = parse("71 Pilgrim Ave. 32904");
        assert_eq!(address.city.as_deref(), Some("Melbourne"));
        assert_eq!(address.state.as_deref(), Some("FL"));
        assert_eq!(
            address.render_full(),
            "32904; FL; Melbourne; 71 Pilgrim Ave."
        );
    }

    #[test]
    fn explicit_city_wins_over_the_gazetteer() {
        let address = parse("44 Shirley Ave. Springfield 60185");
        assert_eq!(address.city.as_deref(), Some("Springfield"));
        // State still comes from the gazetteer when the zip is known.
        assert_eq!(address.state.as_deref(), Some("IL"));
    }

    #[test]
    fn explicit_state_code_is_the_fallback() {
        let address = parse("10 Street FL");
        assert_eq!(address.state.as_deref(), Some("FL"));
        assert_eq!(address.zip, None);
        assert_eq!(address.street.as_deref(), Some("10 Street"));
    }

    #[test]
    fn unrecognizable_values_are_rejected() {
        let lexicons = lexicons();
        let gazetteer = gazetteer();
        for raw in ["", "@#$", "12 34"] {
            let tokens = tokenize(raw, FieldKind::Address, &lexicons);
            assert_eq!(
                standardize_address(&tokens, &gazetteer),
                Err(AddressError::Unparseable),
                "{raw:?}"
            );
        }
    }

    #[test]
    fn fused_street_tokens_normalize_ordinals() {
        let set = |s: &str| fuse_street_tokens(s).into_iter().collect::<Vec<_>>();
        assert_eq!(set("123 6 th Street"), ["123", "6th", "street"]);
        assert_eq!(set("6th Street"), ["6th", "street"]);
        assert_eq!(set("44 Shirley Ave."), ["44", "ave.", "shirley"]);
        assert_eq!(set(""), Vec::<String>::new());
    }
}
