use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One survivorship rule. Rules run in order as narrowing filters over
/// the candidate values of a field; each keeps only the candidates that
/// maximize its criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurvivorshipRule {
    /// Most contributors.
    Majority,
    /// Best contributor completeness (populated fields).
    MostComplete,
    /// Longest rendered value.
    Longest,
    /// Earliest record. Always decides, so it must close the order.
    FirstSeen,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolicyError {
    #[error("survivorship rule order must not be empty")]
    Empty,
    #[error("survivorship rule order must end with first_seen so every field resolves")]
    MustEndWithFirstSeen,
    #[error("survivorship rule {0:?} appears more than once")]
    Duplicate(SurvivorshipRule),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivorshipPolicy {
    rules: Vec<SurvivorshipRule>,
}

impl SurvivorshipPolicy {
    pub fn new(rules: Vec<SurvivorshipRule>) -> Result<Self, PolicyError> {
        if rules.is_empty() {
            return Err(PolicyError::Empty);
        }
        if *rules.last().unwrap() != SurvivorshipRule::FirstSeen {
            return Err(PolicyError::MustEndWithFirstSeen);
        }
        for (i, rule) in rules.iter().enumerate() {
            if rules[i + 1..].contains(rule) {
                return Err(PolicyError::Duplicate(*rule));
            }
        }
        Ok(SurvivorshipPolicy { rules })
    }

    pub fn default_order() -> Self {
        SurvivorshipPolicy::new(vec![
            SurvivorshipRule::Majority,
            SurvivorshipRule::MostComplete,
            SurvivorshipRule::Longest,
            SurvivorshipRule::FirstSeen,
        ])
        .unwrap()
    }

    pub fn rules(&self) -> &[SurvivorshipRule] {
        &self.rules
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_default_order_is_valid() {
        let policy = SurvivorshipPolicy::default_order();
        assert_eq!(policy.rules().len(), 4);
        assert_eq!(*policy.rules().last().unwrap(), SurvivorshipRule::FirstSeen);
    }

    #[test]
    fn orders_must_close_with_first_seen() {
        assert_eq!(
            SurvivorshipPolicy::new(vec![SurvivorshipRule::Majority]),
            Err(PolicyError::MustEndWithFirstSeen)
        );
        assert!(SurvivorshipPolicy::new(vec![SurvivorshipRule::FirstSeen]).is_ok());
        assert_eq!(SurvivorshipPolicy::new(vec![]), Err(PolicyError::Empty));
    }

    #[test]
    fn duplicate_rules_are_rejected() {
        assert_eq!(
            SurvivorshipPolicy::new(vec![
                SurvivorshipRule::Majority,
                SurvivorshipRule::Majority,
                SurvivorshipRule::FirstSeen,
            ]),
            Err(PolicyError::Duplicate(SurvivorshipRule::Majority))
        );
    }
}
