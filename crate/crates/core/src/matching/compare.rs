use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::similarity::{jaccard, normalized_similarity};
use crate::model::RecordRef;
use crate::standardize::{fuse_street_tokens, CleansedRecord, PersonName};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparatorWeights {
    pub id_exact: f64,
    pub name_sim: f64,
    pub date_sim: f64,
    pub address_sim: f64,
}

impl Default for ComparatorWeights {
    fn default() -> Self {
        ComparatorWeights {
            id_exact: 0.4,
            name_sim: 0.3,
            date_sim: 0.15,
            address_sim: 0.15,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockingKey {
    None,
    LastName,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchConfig {
    pub weights: ComparatorWeights,
    pub match_threshold: f64,
    pub blocking_key: BlockingKey,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            weights: ComparatorWeights::default(),
            match_threshold: 0.75,
            blocking_key: BlockingKey::LastName,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MatchConfigError {
    #[error("comparator weight {name} must be finite and non-negative, got {value}")]
    BadWeight { name: &'static str, value: f64 },
    #[error("comparator weights must not all be zero")]
    ZeroWeights,
    #[error("match threshold must be within [0, 1], got {0}")]
    BadThreshold(f64),
}

impl MatchConfig {
    pub fn validate(&self) -> Result<(), MatchConfigError> {
        let weights = [
            ("id_exact", self.weights.id_exact),
            ("name_sim", self.weights.name_sim),
            ("date_sim", self.weights.date_sim),
            ("address_sim", self.weights.address_sim),
        ];
        for (name, value) in weights {
            if !value.is_finite() || value < 0.0 {
                return Err(MatchConfigError::BadWeight { name, value });
            }
        }
        if weights.iter().map(|(_, v)| v).sum::<f64>() == 0.0 {
            return Err(MatchConfigError::ZeroWeights);
        }
        if !(0.0..=1.0).contains(&self.match_threshold) || !self.match_threshold.is_finite() {
            return Err(MatchConfigError::BadThreshold(self.match_threshold));
        }
        Ok(())
    }
}

/// One comparator's verdict on a pair. `score` is `None` when the
/// comparator abstained for lack of evidence on either side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparatorScore {
    pub comparator: String,
    pub weight: f64,
    pub score: Option<f64>,
}

/// A scored candidate pair. The score is the weight-normalized mean of
/// the comparators that had evidence; a pair where every comparator
/// abstained scores 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchPair {
    pub left: RecordRef,
    pub right: RecordRef,
    #[serde(skip)]
    pub left_index: usize,
    #[serde(skip)]
    pub right_index: usize,
    pub score: f64,
    pub evidence: Vec<ComparatorScore>,
}

pub fn compare(
    left: &CleansedRecord,
    right: &CleansedRecord,
    left_index: usize,
    right_index: usize,
    weights: &ComparatorWeights,
) -> MatchPair {
    let evidence = vec![
        ComparatorScore {
            comparator: "id_exact".to_string(),
            weight: weights.id_exact,
            score: id_exact(left, right),
        },
        ComparatorScore {
            comparator: "name_sim".to_string(),
            weight: weights.name_sim,
            score: name_sim(left, right),
        },
        ComparatorScore {
            comparator: "date_sim".to_string(),
            weight: weights.date_sim,
            score: date_sim(left, right),
        },
        ComparatorScore {
            comparator: "address_sim".to_string(),
            weight: weights.address_sim,
            score: address_sim(left, right),
        },
    ];

    let mut weighted = 0.0;
    let mut total_weight = 0.0;
    for item in &evidence {
        if let Some(score) = item.score {
            weighted += item.weight * score;
            total_weight += item.weight;
        }
    }
    let score = if total_weight > 0.0 {
        weighted / total_weight
    } else {
        0.0
    };

    MatchPair {
        left: left.record_ref.clone(),
        right: right.record_ref.clone(),
        left_index,
        right_index,
        score,
        evidence,
    }
}

fn id_exact(left: &CleansedRecord, right: &CleansedRecord) -> Option<f64> {
    match (&left.id, &right.id) {
        (Some(a), Some(b)) => Some(if a == b { 1.0 } else { 0.0 }),
        _ => None,
    }
}

/// Surname edit similarity damped by a first-name factor: matching
/// initials pass, clashing initials veto, full first names compare by
/// edit similarity, and a missing first name is simply no evidence
/// against the surname.
fn name_sim(left: &CleansedRecord, right: &CleansedRecord) -> Option<f64> {
    let (a, b) = match (&left.name, &right.name) {
        (Some(a), Some(b)) => (a, b),
        _ => return None,
    };
    let last = normalized_similarity(&a.last.to_lowercase(), &b.last.to_lowercase());
    Some(last * first_factor(a, b))
}

fn first_factor(a: &PersonName, b: &PersonName) -> f64 {
    let (first_a, first_b) = match (&a.first, &b.first) {
        (Some(fa), Some(fb)) => (fa, fb),
        _ => return 1.0,
    };
    if a.first_is_initial || b.first_is_initial {
        let la = first_a.chars().next().map(|c| c.to_ascii_uppercase());
        let lb = first_b.chars().next().map(|c| c.to_ascii_uppercase());
        if la == lb {
            1.0
        } else {
            0.0
        }
    } else {
        normalized_similarity(&first_a.to_lowercase(), &first_b.to_lowercase())
    }
}

/// Full agreement scores 1; a swapped month and day, or any two of the
/// three components agreeing, scores half; anything else scores 0.
fn date_sim(left: &CleansedRecord, right: &CleansedRecord) -> Option<f64> {
    let (a, b) = match (&left.birth_date, &right.birth_date) {
        (Some(a), Some(b)) => (a, b),
        _ => return None,
    };
    if a == b {
        return Some(1.0);
    }
    let swapped = a.year == b.year && a.month == b.day && a.day == b.month;
    let matching_parts = usize::from(a.year == b.year)
        + usize::from(a.month == b.month)
        + usize::from(a.day == b.day);
    if swapped || matching_parts == 2 {
        Some(0.5)
    } else {
        Some(0.0)
    }
}

/// Mean of the comparable address parts: fused street-token overlap and
/// zip equality. Parts missing on either side drop out; a pair with no
/// comparable part abstains.
fn address_sim(left: &CleansedRecord, right: &CleansedRecord) -> Option<f64> {
    let (a, b) = match (&left.address, &right.address) {
        (Some(a), Some(b)) => (a, b),
        _ => return None,
    };
    let mut parts: Vec<f64> = Vec::new();
    if let (Some(sa), Some(sb)) = (&a.street, &b.street) {
        parts.push(jaccard(&fuse_street_tokens(sa), &fuse_street_tokens(sb)));
    }
    if let (Some(za), Some(zb)) = (&a.zip, &b.zip) {
        parts.push(if za == zb { 1.0 } else { 0.0 });
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.iter().sum::<f64>() / parts.len() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testsupport::cleanse_fixture;

    fn score(records: &[CleansedRecord], left: usize, right: usize) -> f64 {
        compare(
            &records[left - 1],
            &records[right - 1],
            left - 1,
            right - 1,
            &ComparatorWeights::default(),
        )
        .score
    }

    #[test]
    fn fixture_pair_scores_match_hand_calculation() {
        let (_, records) = cleanse_fixture();
        let close = |got: f64, want: f64| (got - want).abs() < 1e-9;

        assert!(close(score(&records, 1, 2), 1.0));
        assert!(close(score(&records, 1, 3), 0.8125 / 0.85));
        assert!(close(score(&records, 1, 4), 0.625));
        assert!(close(score(&records, 1, 5), 0.775 / 0.85));
        assert!(close(score(&records, 1, 6), 0.9625));
        assert!(close(score(&records, 2, 3), 0.55 / 0.6));
        assert!(close(score(&records, 2, 4), 0.625));
        assert!(close(score(&records, 2, 5), 0.375 / 0.45));
        assert!(close(score(&records, 2, 6), 0.9375));
        assert!(close(score(&records, 3, 4), 0.375 / 0.45));
        assert!(close(score(&records, 3, 5), 1.0));
        assert!(close(score(&records, 3, 6), 0.8125 / 0.85));
        assert!(close(score(&records, 4, 5), 0.375 / 0.45));
        assert!(close(score(&records, 4, 6), 0.625));
        assert!(close(score(&records, 5, 6), 0.775 / 0.85));
        assert!(close(score(&records, 7, 8), 0.825 / 0.85));
    }

    #[test]
    fn different_authors_score_near_zero() {
        let (_, records) = cleanse_fixture();
        for smit in 1..=6 {
            for scott in 7..=8 {
                let got = score(&records, smit, scott);
                assert!(got < 0.2, "rows {smit} and {scott} scored {got}");
            }
        }
    }

    #[test]
    fn scoring_is_symmetric() {
        let (_, records) = cleanse_fixture();
        let weights = ComparatorWeights::default();
        for i in 0..records.len() {
            for j in i + 1..records.len() {
                let forward = compare(&records[i], &records[j], i, j, &weights);
                let backward = compare(&records[j], &records[i], j, i, &weights);
                assert_eq!(forward.score, backward.score, "rows {i} {j}");
            }
        }
    }

    #[test]
    fn abstentions_drop_out_of_the_denominator() {
        let (_, records) = cleanse_fixture();
        // Rows 3 and 5: only id and name have evidence on both sides.
        let pair = compare(
            &records[2],
            &records[4],
            2,
            4,
            &ComparatorWeights::default(),
        );
        let scores: Vec<Option<f64>> = pair.evidence.iter().map(|e| e.score).collect();
        assert_eq!(scores, vec![Some(1.0), Some(1.0), None, None]);
        assert_eq!(pair.score, 1.0);
    }

    #[test]
    fn all_abstaining_pairs_score_zero() {
        let (_, records) = cleanse_fixture();
        let mut left = records[0].clone();
        let mut right = records[1].clone();
        for record in [&mut left, &mut right] {
            record.id = None;
            record.name = None;
            record.birth_date = None;
            record.address = None;
        }
        let pair = compare(&left, &right, 0, 1, &ComparatorWeights::default());
        assert_eq!(pair.score, 0.0);
        assert!(pair.evidence.iter().all(|e| e.score.is_none()));
    }

    #[test]
    fn swapped_month_and_day_score_half() {
        let (_, records) = cleanse_fixture();
        let mut left = records[0].clone();
        let mut right = records[0].clone();
        left.birth_date = crate::standardize::standardize_date("1987-12-03").ok();
        right.birth_date = crate::standardize::standardize_date("1987-03-12").ok();
        let date_evidence = |l: &CleansedRecord, r: &CleansedRecord| {
            compare(l, r, 0, 1, &ComparatorWeights::default())
                .evidence
                .iter()
                .find(|e| e.comparator == "date_sim")
                .unwrap()
                .score
        };
        assert_eq!(date_evidence(&left, &right), Some(0.5));
        right.birth_date = crate::standardize::standardize_date("1955-06-07").ok();
        assert_eq!(date_evidence(&left, &right), Some(0.0));
    }

    #[test]
    fn config_validation_rejects_nonsense() {
        let mut config = MatchConfig::default();
        assert_eq!(config.validate(), Ok(()));
        config.match_threshold = 1.5;
        assert_eq!(config.validate(), Err(MatchConfigError::BadThreshold(1.5)));
        config.match_threshold = 0.75;
        config.weights.id_exact = -1.0;
        assert!(matches!(
            config.validate(),
            Err(MatchConfigError::BadWeight {
                name: "id_exact",
                ..
            })
        ));
        config.weights = ComparatorWeights {
            id_exact: 0.0,
            name_sim: 0.0,
            date_sim: 0.0,
            address_sim: 0.0,
        };
        assert_eq!(config.validate(), Err(MatchConfigError::ZeroWeights));
    }
}
