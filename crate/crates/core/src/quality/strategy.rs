use serde::{Deserialize, Serialize};
use thiserror::Error;

/// How much effort to spend keeping a dataset clean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Strategy {
    LaissezFaire,
    Reactive,
    Proactive,
}

impl Strategy {
    /// Effort rank: laissez-faire 0, reactive 1, proactive 2.
    pub fn rank(self) -> u8 {
        match self {
            Strategy::LaissezFaire => 0,
            Strategy::Reactive => 1,
            Strategy::Proactive => 2,
        }
    }
}

/// The quadrant boundaries on the importance and change-frequency axes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyCuts {
    pub importance_cut: f64,
    pub frequency_cut: f64,
}

impl Default for StrategyCuts {
    fn default() -> Self {
        StrategyCuts {
            importance_cut: 0.5,
            frequency_cut: 0.5,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("{name} is {value}, expected a number in [0, 1]")]
pub struct StrategyError {
    pub name: &'static str,
    pub value: f64,
}

/// A recommendation with the inputs that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyRecommendation {
    pub importance: f64,
    pub change_frequency: f64,
    pub strategy: Strategy,
}

/// Unimportant data is left alone; important but stable data is fixed
/// when defects surface; important, fast-changing data warrants
/// continuous prevention.
pub fn recommend(
    importance: f64,
    change_frequency: f64,
    cuts: &StrategyCuts,
) -> Result<StrategyRecommendation, StrategyError> {
    for (name, value) in [
        ("importance", importance),
        ("change_frequency", change_frequency),
        ("importance_cut", cuts.importance_cut),
        ("frequency_cut", cuts.frequency_cut),
    ] {
        if !(0.0..=1.0).contains(&value) {
            return Err(StrategyError { name, value });
        }
    }
    let strategy = if importance < cuts.importance_cut {
        Strategy::LaissezFaire
    } else if change_frequency < cuts.frequency_cut {
        Strategy::Reactive
    } else {
        Strategy::Proactive
    };
    Ok(StrategyRecommendation {
        importance,
        change_frequency,
        strategy,
    })
}
