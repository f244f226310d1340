use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rules::{Dimension, QualityRule, RuleContext, SelfCheckFailure};
use crate::model::{DefectCode, RawRecord, RecordRef};

/// One weighted dimension and the rules measured under it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionSpec {
    pub dimension: Dimension,
    pub weight: f64,
    #[serde(default)]
    pub rules: Vec<QualityRule>,
}

/// The assessment portfolio: weighted dimensions plus the score a
/// dataset must reach to count as acceptable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QualityConfig {
    pub acceptability_threshold: f64,
    pub dimensions: Vec<DimensionSpec>,
}

#[derive(Debug, Error, PartialEq)]
pub enum QualityConfigError {
    #[error("no quality dimensions configured")]
    NoDimensions,
    #[error(
        "dimension {dimension} has weight {weight}, which is not a finite non-negative number"
    )]
    BadWeight {
        dimension: &'static str,
        weight: f64,
    },
    #[error("dimension weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },
    #[error("acceptability threshold {threshold} is outside [0, 1]")]
    BadThreshold { threshold: f64 },
    #[error(transparent)]
    SelfCheck(#[from] SelfCheckFailure),
}

impl QualityConfig {
    /// Structural validation: weights present, non-negative, summing to 1,
    /// threshold in range. Exemplar self-checks need reference data and
    /// run separately via [`QualityConfig::self_check`].
    pub fn validate(&self) -> Result<(), QualityConfigError> {
        if self.dimensions.is_empty() {
            return Err(QualityConfigError::NoDimensions);
        }
        for spec in &self.dimensions {
            if !spec.weight.is_finite() || spec.weight < 0.0 {
                return Err(QualityConfigError::BadWeight {
                    dimension: spec.dimension.name(),
                    weight: spec.weight,
                });
            }
        }
        let sum: f64 = self.dimensions.iter().map(|d| d.weight).sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(QualityConfigError::WeightSum { sum });
        }
        if !(0.0..=1.0).contains(&self.acceptability_threshold) {
            return Err(QualityConfigError::BadThreshold {
                threshold: self.acceptability_threshold,
            });
        }
        Ok(())
    }

    /// Runs every rule's exemplar self-check.
    pub fn self_check(&self, ctx: RuleContext<'_>) -> Result<(), QualityConfigError> {
        for spec in &self.dimensions {
            for rule in &spec.rules {
                rule.self_check(ctx)?;
            }
        }
        Ok(())
    }
}

/// Pass/fail tally of one dimension over the dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionScore {
    pub dimension: Dimension,
    pub weight: f64,
    pub passed: usize,
    pub applicable: usize,
    pub score: f64,
}

/// One record failing one rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub record_ref: RecordRef,
    pub rule: String,
    pub field: String,
    pub dimension: Dimension,
    pub code: DefectCode,
}

/// The outcome of assessing a dataset against a [`QualityConfig`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub record_count: usize,
    pub dimension_scores: Vec<DimensionScore>,
    pub aggregate: f64,
    pub acceptability_threshold: f64,
    pub acceptable: bool,
    pub violations: Vec<Violation>,
}

impl QualityReport {
    pub fn dimension_score(&self, dimension: Dimension) -> Option<f64> {
        self.dimension_scores
            .iter()
            .find(|d| d.dimension == dimension)
            .map(|d| d.score)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssessError {
    #[error("cannot assess an empty dataset")]
    EmptyDataset,
}

/// Scores the dataset: each dimension is the fraction of applicable
/// rule evaluations that passed (an unmeasurable dimension scores 1),
/// and the aggregate is the weighted sum over dimensions.
pub fn assess(
    records: &[RawRecord],
    config: &QualityConfig,
    ctx: RuleContext<'_>,
) -> Result<QualityReport, AssessError> {
    if records.is_empty() {
        return Err(AssessError::EmptyDataset);
    }

    let mut dimension_scores = Vec::with_capacity(config.dimensions.len());
    let mut violations = Vec::new();
    for spec in &config.dimensions {
        let mut passed = 0usize;
        let mut applicable = 0usize;
        for rule in &spec.rules {
            for record in records {
                match rule.evaluate(record, ctx) {
                    Some(true) => {
                        passed += 1;
                        applicable += 1;
                    }
                    Some(false) => {
                        applicable += 1;
                        violations.push(Violation {
                            record_ref: record.record_ref.clone(),
                            rule: rule.name.clone(),
                            field: rule.field.clone(),
                            dimension: spec.dimension,
                            code: spec.dimension.violation_code(),
                        });
                    }
                    None => {}
                }
            }
        }
        let score = if applicable == 0 {
            1.0
        } else {
            passed as f64 / applicable as f64
        };
        dimension_scores.push(DimensionScore {
            dimension: spec.dimension,
            weight: spec.weight,
            passed,
            applicable,
            score,
        });
    }

    let aggregate: f64 = dimension_scores.iter().map(|d| d.weight * d.score).sum();
    Ok(QualityReport {
        record_count: records.len(),
        dimension_scores,
        aggregate,
        acceptable: aggregate >= config.acceptability_threshold,
        acceptability_threshold: config.acceptability_threshold,
        violations,
    })
}
