//! Weighted quality assessment over raw records, trend tracking across
//! assessments, and effort-level recommendation.

mod assess;
mod rules;
mod strategy;
mod trend;

pub use assess::{
    assess, AssessError, DimensionScore, DimensionSpec, QualityConfig, QualityConfigError,
    QualityReport, Violation,
};
pub use rules::{Dimension, QualityRule, RuleContext, RulePredicate, SelfCheckFailure};
pub use strategy::{recommend, Strategy, StrategyCuts, StrategyError, StrategyRecommendation};
pub use trend::{direction, record_trend, TrendDirection, TrendError, TrendMetadata, TrendPoint};
