use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::model::DefectCode;

/// A calendar-checked date rendered as zero-padded `YYYY-MM-DD`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalDate {
    pub year: i32,
    pub month: u32,
    pub day: u32,
}

impl CanonicalDate {
    pub fn render(&self) -> String {
        format!("{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}

#[derive(Clone, Debug)]
pub struct DateOptions {
    /// Two-digit years below the pivot land in the 2000s, the rest in
    /// the 1900s.
    pub two_digit_year_pivot: u32,
    /// When set, an undelimited six-digit run is read as YYDDMM, falling
    /// back to YYMMDD. When unset such runs are rejected as typos.
    pub six_digit_date_heuristic: bool,
}

impl Default for DateOptions {
    fn default() -> Self {
        DateOptions {
            two_digit_year_pivot: 30,
            six_digit_date_heuristic: false,
        }
    }
}

/// Why a value failed to standardize. `Incomplete` marks values that are
/// recognizable but missing components (a bare year); everything else is
/// a `Typo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DateFailure {
    Typo,
    Incomplete,
}

impl DateFailure {
    pub fn code(self) -> DefectCode {
        match self {
            DateFailure::Typo => DefectCode::Typo,
            DateFailure::Incomplete => DefectCode::Incomplete,
        }
    }
}

pub fn standardize_date(raw: &str) -> Result<CanonicalDate, DateFailure> {
    standardize_date_with(raw, &DateOptions::default())
}

/// Accepted layouts, tried on the whitespace-stripped value:
///   `YYYY-MM-DD`, `D-M-YYYY`, `M/D/YYYY`, `M/D/YY`, `D.M.YYYY`, `D.M.YY`,
///   undelimited `YYYYMMDD`, and (behind the heuristic) six-digit runs.
/// Every parse is calendar-checked.
pub fn standardize_date_with(
    raw: &str,
    options: &DateOptions,
) -> Result<CanonicalDate, DateFailure> {
    let squeezed: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if squeezed.is_empty() {
        return Err(DateFailure::Typo);
    }

    if squeezed.contains('/') {
        let [a, b, c] = three_numeric_parts(&squeezed, '/')?;
        // Month-first is the convention for slashed dates.
        return build(year_of(c, options)?, a, b);
    }
    if squeezed.contains('.') {
        let [a, b, c] = three_numeric_parts(&squeezed, '.')?;
        // Dotted dates are day-first.
        return build(year_of(c, options)?, b, a);
    }
    if squeezed.contains('-') {
        let [a, b, c] = three_numeric_parts(&squeezed, '-')?;
        if digit_len(&squeezed, '-', 0) == 4 {
            return build(a as i32, b, c);
        }
        // Dashed dates that do not lead with the year are day-first.
        return build(year_of(c, options)?, b, a);
    }

    if !squeezed.chars().all(|c| c.is_ascii_digit()) {
        return Err(DateFailure::Typo);
    }
    match squeezed.len() {
        4 => Err(DateFailure::Incomplete),
        8 => {
            let year: i32 = squeezed[..4].parse().map_err(|_| DateFailure::Typo)?;
            let month: u32 = squeezed[4..6].parse().map_err(|_| DateFailure::Typo)?;
            let day: u32 = squeezed[6..].parse().map_err(|_| DateFailure::Typo)?;
            build(year, month, day)
        }
        6 if options.six_digit_date_heuristic => {
            let year = pivot_year(squeezed[..2].parse().unwrap(), options);
            let mid: u32 = squeezed[2..4].parse().unwrap();
            let end: u32 = squeezed[4..].parse().unwrap();
            build(year, end, mid).or_else(|_| build(year, mid, end))
        }
        _ => Err(DateFailure::Typo),
    }
}

fn three_numeric_parts(value: &str, sep: char) -> Result<[u32; 3], DateFailure> {
    let parts: Vec<&str> = value.split(sep).filter(|p| !p.is_empty()).collect();
    if parts.len() != 3 {
        return Err(DateFailure::Typo);
    }
    let mut out = [0u32; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        if !part.chars().all(|c| c.is_ascii_digit()) || part.len() > 4 {
            return Err(DateFailure::Typo);
        }
        *slot = part.parse().map_err(|_| DateFailure::Typo)?;
    }
    Ok(out)
}

fn digit_len(value: &str, sep: char, index: usize) -> usize {
    value
        .split(sep)
        .filter(|p| !p.is_empty())
        .nth(index)
        .map_or(0, str::len)
}

fn year_of(part: u32, options: &DateOptions) -> Result<i32, DateFailure> {
    if part >= 1000 {
        Ok(part as i32)
    } else if part < 100 {
        Ok(pivot_year(part, options))
    } else {
        Err(DateFailure::Typo)
    }
}

fn pivot_year(two_digits: u32, options: &DateOptions) -> i32 {
    if two_digits < options.two_digit_year_pivot {
        2000 + two_digits as i32
    } else {
        1900 + two_digits as i32
    }
}

fn build(year: i32, month: u32, day: u32) -> Result<CanonicalDate, DateFailure> {
    NaiveDate::from_ymd_opt(year, month, day)
        .map(|_| CanonicalDate { year, month, day })
        .ok_or(DateFailure::Typo)
}
