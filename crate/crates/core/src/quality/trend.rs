use std::collections::BTreeMap;

use chrono::{DateTime, FixedOffset};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::assess::QualityReport;

/// Bookkeeping attached to a trend point; never part of the scores.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrendMetadata {
    pub recorded_at: String,
}

/// One assessment outcome on the quality timeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendPoint {
    pub metadata: TrendMetadata,
    pub aggregate: f64,
    pub dimension_scores: BTreeMap<String, f64>,
}

impl TrendPoint {
    /// `recorded_at` must be an RFC 3339 timestamp.
    pub fn from_report(report: &QualityReport, recorded_at: impl Into<String>) -> TrendPoint {
        TrendPoint {
            metadata: TrendMetadata {
                recorded_at: recorded_at.into(),
            },
            aggregate: report.aggregate,
            dimension_scores: report
                .dimension_scores
                .iter()
                .map(|d| (d.dimension.name().to_string(), d.score))
                .collect(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrendError {
    #[error("trend timestamp {value:?} is not an RFC 3339 datetime")]
    InvalidTimestamp { value: String },
    #[error("trend timestamp {next} precedes the previous point {previous}")]
    NonMonotoneTimestamp { previous: String, next: String },
}

fn parse_timestamp(value: &str) -> Result<DateTime<FixedOffset>, TrendError> {
    DateTime::parse_from_rfc3339(value).map_err(|_| TrendError::InvalidTimestamp {
        value: value.to_string(),
    })
}

/// Appends a point to the timeline, insisting that time moves forward.
pub fn record_trend(points: &mut Vec<TrendPoint>, point: TrendPoint) -> Result<(), TrendError> {
    let next = parse_timestamp(&point.metadata.recorded_at)?;
    if let Some(last) = points.last() {
        let previous = parse_timestamp(&last.metadata.recorded_at)?;
        if next < previous {
            return Err(TrendError::NonMonotoneTimestamp {
                previous: last.metadata.recorded_at.clone(),
                next: point.metadata.recorded_at,
            });
        }
    }
    points.push(point);
    Ok(())
}

/// Where the aggregate moved between the last two points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TrendDirection {
    Improving,
    Degrading,
    Steady,
}

/// Fewer than two points give no movement to speak of.
pub fn direction(points: &[TrendPoint]) -> TrendDirection {
    match points {
        [.., previous, last] => {
            let delta = last.aggregate - previous.aggregate;
            if delta > 1e-9 {
                TrendDirection::Improving
            } else if delta < -1e-9 {
                TrendDirection::Degrading
            } else {
                TrendDirection::Steady
            }
        }
        _ => TrendDirection::Steady,
    }
}
