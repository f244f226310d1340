use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enrich::Gazetteer;
use crate::model::{DefectCode, RawRecord};
use crate::standardize::{
    standardize_date_with, standardize_id_with, DateOptions, IdOptions, IdOutcome,
};

/// The four measured aspects of data quality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Completeness,
    Correctness,
    Consistency,
    Timeliness,
}

impl Dimension {
    pub fn name(self) -> &'static str {
        match self {
            Dimension::Completeness => "completeness",
            Dimension::Correctness => "correctness",
            Dimension::Consistency => "consistency",
            Dimension::Timeliness => "timeliness",
        }
    }

    /// The defect code attached to violations of rules in this dimension.
    pub fn violation_code(self) -> DefectCode {
        match self {
            Dimension::Completeness => DefectCode::MissingInfo,
            Dimension::Correctness => DefectCode::Typo,
            Dimension::Consistency => DefectCode::Contradictory,
            Dimension::Timeliness => DefectCode::Obsolete,
        }
    }
}

/// What a rule checks about one field value.
///
/// Presence predicates apply to every record; value predicates abstain
/// (return `None`) when the field is missing, so a record is never
/// penalized twice for one gap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RulePredicate {
    Present,
    PresentNotPlaceholder,
    ParsesAsDate,
    ParsesAsId,
    CanonicalIdFormat,
    CanonicalDateFormat,
    ZipCityConsistent,
    UpdatedAfter { horizon: String },
}

/// One named check of one field, with exemplars that must pass and fail.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QualityRule {
    pub name: String,
    pub field: String,
    pub predicate: RulePredicate,
    #[serde(default)]
    pub good: Vec<String>,
    #[serde(default)]
    pub bad: Vec<String>,
}

/// Reference data the predicates draw on.
#[derive(Clone, Copy, Debug)]
pub struct RuleContext<'a> {
    pub id: &'a IdOptions,
    pub date: &'a DateOptions,
    pub gazetteer: Option<&'a Gazetteer>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("rule {rule}: exemplar {exemplar:?} evaluated to {got:?}, expected Some({expected})")]
pub struct SelfCheckFailure {
    pub rule: String,
    pub exemplar: String,
    pub expected: bool,
    pub got: Option<bool>,
}

impl QualityRule {
    /// `Some(true)` pass, `Some(false)` violation, `None` not applicable.
    pub fn evaluate(&self, record: &RawRecord, ctx: RuleContext<'_>) -> Option<bool> {
        let value = record
            .value(&self.field)
            .map(str::trim)
            .filter(|v| !v.is_empty());
        match &self.predicate {
            RulePredicate::Present => Some(value.is_some()),
            RulePredicate::PresentNotPlaceholder => Some(match value {
                None => false,
                Some(v) => !matches!(standardize_id_with(v, ctx.id), IdOutcome::Placeholder),
            }),
            RulePredicate::ParsesAsDate => {
                value.map(|v| standardize_date_with(v, ctx.date).is_ok())
            }
            RulePredicate::ParsesAsId => {
                value.map(|v| matches!(standardize_id_with(v, ctx.id), IdOutcome::Valid(_)))
            }
            RulePredicate::CanonicalIdFormat => value.map(canonical_id_rendering),
            RulePredicate::CanonicalDateFormat => value.map(|v| {
                standardize_date_with(v, ctx.date)
                    .map(|d| d.render() == v)
                    .unwrap_or(false)
            }),
            RulePredicate::ZipCityConsistent => zip_city_consistent(value?, ctx.gazetteer?),
            RulePredicate::UpdatedAfter { horizon } => {
                let value = value?;
                let horizon = standardize_date_with(horizon, ctx.date).ok()?;
                Some(
                    standardize_date_with(value, ctx.date)
                        .map(|d| {
                            (d.year, d.month, d.day) >= (horizon.year, horizon.month, horizon.day)
                        })
                        .unwrap_or(false),
                )
            }
        }
    }

    /// Checks the rule's own exemplars: every `good` value must pass and
    /// every `bad` value must fail outright, otherwise the rule (or its
    /// context) is misconfigured.
    pub fn self_check(&self, ctx: RuleContext<'_>) -> Result<(), SelfCheckFailure> {
        for (exemplar, expected) in self
            .good
            .iter()
            .map(|e| (e, true))
            .chain(self.bad.iter().map(|e| (e, false)))
        {
            let record = exemplar_record(&self.field, exemplar);
            let got = self.evaluate(&record, ctx);
            if got != Some(expected) {
                return Err(SelfCheckFailure {
                    rule: self.name.clone(),
                    exemplar: exemplar.clone(),
                    expected,
                    got,
                });
            }
        }
        Ok(())
    }
}

fn exemplar_record(field: &str, value: &str) -> RawRecord {
    let mut record = RawRecord {
        record_ref: crate::model::RecordRef::new("exemplar", 1),
        values: Default::default(),
    };
    record
        .values
        .insert(field.to_string(), Some(value.to_string()));
    record
}

/// True when the value is already the canonical dashed rendering of a
/// well-formed identifier. Placeholders count: they are judged on form
/// here, not on substance.
fn canonical_id_rendering(value: &str) -> bool {
    let compact: String = value
        .chars()
        .filter(|c| *c != '-' && !c.is_whitespace())
        .map(|c| c.to_ascii_uppercase())
        .collect();
    if compact.len() != 16 || !compact.chars().all(|c| c.is_ascii_hexdigit()) {
        return false;
    }
    let rendered = compact
        .as_bytes()
        .chunks(4)
        .map(|chunk| std::str::from_utf8(chunk).unwrap())
        .collect::<Vec<_>>()
        .join("-");
    rendered == value
}

/// Finds the first five-digit run in the value; if the gazetteer knows
/// it, the stated city must appear somewhere in the value. No zip or an
/// unknown zip gives no verdict.
fn zip_city_consistent(value: &str, gazetteer: &Gazetteer) -> Option<bool> {
    let mut run = String::new();
    let mut zip = None;
    for c in value.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_digit() {
            run.push(c);
        } else {
            if run.len() == 5 {
                zip = Some(run.clone());
                break;
            }
            run.clear();
        }
    }
    let (city, _) = gazetteer.lookup(&zip?)?;
    Some(value.to_lowercase().contains(&city.to_lowercase()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testsupport::load_fixture;

    fn ctx_options() -> (IdOptions, DateOptions) {
        (IdOptions::default(), DateOptions::default())
    }

    fn rule(field: &str, predicate: RulePredicate) -> QualityRule {
        QualityRule {
            name: "under_test".to_string(),
            field: field.to_string(),
            predicate,
            good: Vec::new(),
            bad: Vec::new(),
        }
    }

    fn eval(predicate: RulePredicate, value: Option<&str>) -> Option<bool> {
        let (id, date) = ctx_options();
        let fixture = load_fixture();
        let ctx = RuleContext {
            id: &id,
            date: &date,
            gazetteer: Some(&fixture.gazetteer),
        };
        let rule = rule("F", predicate);
        let mut record = exemplar_record("F", value.unwrap_or_default());
        if value.is_none() {
            record.values.insert("F".to_string(), None);
        }
        rule.evaluate(&record, ctx)
    }

    #[test]
    fn presence_predicates_always_give_a_verdict() {
        assert_eq!(eval(RulePredicate::Present, Some("x")), Some(true));
        assert_eq!(eval(RulePredicate::Present, Some("")), Some(false));
        assert_eq!(eval(RulePredicate::Present, Some("   ")), Some(false));
        assert_eq!(eval(RulePredicate::Present, None), Some(false));
        assert_eq!(
            eval(
                RulePredicate::PresentNotPlaceholder,
                Some("0000-0123-1345-3487")
            ),
            Some(true)
        );
        assert_eq!(
            eval(
                RulePredicate::PresentNotPlaceholder,
                Some("0000-0000-0000-0000")
            ),
            Some(false)
        );
        assert_eq!(
            eval(RulePredicate::PresentNotPlaceholder, Some("not an id")),
            Some(true)
        );
        assert_eq!(
            eval(RulePredicate::PresentNotPlaceholder, None),
            Some(false)
        );
    }

    #[test]
    fn value_predicates_abstain_on_missing() {
        assert_eq!(eval(RulePredicate::ParsesAsDate, None), None);
        assert_eq!(eval(RulePredicate::ParsesAsDate, Some("")), None);
        assert_eq!(eval(RulePredicate::ParsesAsId, None), None);
        assert_eq!(eval(RulePredicate::CanonicalIdFormat, None), None);
        assert_eq!(eval(RulePredicate::CanonicalDateFormat, None), None);
        assert_eq!(eval(RulePredicate::ZipCityConsistent, None), None);
        assert_eq!(
            eval(
                RulePredicate::UpdatedAfter {
                    horizon: "2015-01-01".to_string()
                },
                None
            ),
            None
        );
    }

    #[test]
    fn date_predicates() {
        assert_eq!(
            eval(RulePredicate::ParsesAsDate, Some("12/23/1987")),
            Some(true)
        );
        assert_eq!(
            eval(RulePredicate::ParsesAsDate, Some("23.12. 1987")),
            Some(true)
        );
        assert_eq!(
            eval(RulePredicate::ParsesAsDate, Some("872312")),
            Some(false)
        );
        assert_eq!(eval(RulePredicate::ParsesAsDate, Some("1984")), Some(false));
        assert_eq!(
            eval(RulePredicate::CanonicalDateFormat, Some("1987-12-23")),
            Some(true)
        );
        assert_eq!(
            eval(RulePredicate::CanonicalDateFormat, Some("12/23/1987")),
            Some(false)
        );
    }

    #[test]
    fn id_predicates() {
        assert_eq!(
            eval(RulePredicate::ParsesAsId, Some("0000-0123-1345-3487")),
            Some(true)
        );
        assert_eq!(
            eval(RulePredicate::ParsesAsId, Some("0000012313453487")),
            Some(true)
        );
        assert_eq!(
            eval(RulePredicate::ParsesAsId, Some("0000-0000-0000-0000")),
            Some(false)
        );
        assert_eq!(eval(RulePredicate::ParsesAsId, Some("12345")), Some(false));
    }

    #[test]
    fn canonical_id_format_judges_rendering_not_substance() {
        assert_eq!(
            eval(
                RulePredicate::CanonicalIdFormat,
                Some("0000-0123-1345-3487")
            ),
            Some(true)
        );
        assert_eq!(
            eval(
                RulePredicate::CanonicalIdFormat,
                Some("0000-0000-0000-0000")
            ),
            Some(true)
        );
        assert_eq!(
            eval(RulePredicate::CanonicalIdFormat, Some("0000012313453487")),
            Some(false)
        );
        assert_eq!(
            eval(
                RulePredicate::CanonicalIdFormat,
                Some("0001-0254-4118-f006")
            ),
            Some(false)
        );
        assert_eq!(
            eval(
                RulePredicate::CanonicalIdFormat,
                Some("0001-0254-4118-F006")
            ),
            Some(true)
        );
        assert_eq!(
            eval(RulePredicate::CanonicalIdFormat, Some("12345")),
            Some(false)
        );
    }

    #[test]
    fn zip_city_consistency_uses_the_gazetteer() {
        assert_eq!(
            eval(
                RulePredicate::ZipCityConsistent,
                Some("123 6 th Street, Melbourne, 32904")
            ),
            Some(true)
        );
        assert_eq!(
            eval(
                RulePredicate::ZipCityConsistent,
                Some("6 th Street, 32904 123")
            ),
            Some(false)
        );
        assert_eq!(
            eval(RulePredicate::ZipCityConsistent, Some("no zip here")),
            None
        );
        assert_eq!(
            eval(RulePredicate::ZipCityConsistent, Some("Elm Street 99999")),
            None
        );
    }

    #[test]
    fn updated_after_compares_against_the_horizon() {
        let horizon = RulePredicate::UpdatedAfter {
            horizon: "2015-01-01".to_string(),
        };
        assert_eq!(eval(horizon.clone(), Some("2020-06-01")), Some(true));
        assert_eq!(eval(horizon.clone(), Some("2015-01-01")), Some(true));
        assert_eq!(eval(horizon.clone(), Some("2010-01-01")), Some(false));
        assert_eq!(eval(horizon, Some("not a date")), Some(false));
    }

    #[test]
    fn self_check_accepts_consistent_exemplars() {
        let (id, date) = ctx_options();
        let ctx = RuleContext {
            id: &id,
            date: &date,
            gazetteer: None,
        };
        let mut rule = rule("ORCID", RulePredicate::PresentNotPlaceholder);
        rule.good = vec!["0000-0123-1345-3487".to_string()];
        rule.bad = vec!["".to_string(), "0000-0000-0000-0000".to_string()];
        assert_eq!(rule.self_check(ctx), Ok(()));
    }

    #[test]
    fn self_check_rejects_misclassified_exemplars() {
        let (id, date) = ctx_options();
        let ctx = RuleContext {
            id: &id,
            date: &date,
            gazetteer: None,
        };
        let mut rule = rule("Birth Date", RulePredicate::ParsesAsDate);
        rule.good = vec!["872312".to_string()];
        let err = rule.self_check(ctx).unwrap_err();
        assert_eq!(err.exemplar, "872312");
        assert!(err.expected);
        assert_eq!(err.got, Some(false));

        let mut rule = rule.clone();
        rule.good.clear();
        rule.bad = vec!["".to_string()];
        let err = rule.self_check(ctx).unwrap_err();
        assert_eq!(err.got, None);
    }

    #[test]
    fn predicate_serde_matches_config_spelling() {
        let rule: QualityRule = toml::from_str(
            r#"
            name = "record_reviewed_recently"
            field = "Last Updated"
            predicate = { kind = "updated_after", horizon = "2015-01-01" }
            good = ["2020-06-01"]
            bad = ["2010-01-01"]
            "#,
        )
        .unwrap();
        assert_eq!(
            rule.predicate,
            RulePredicate::UpdatedAfter {
                horizon: "2015-01-01".to_string()
            }
        );
        let rule: QualityRule = toml::from_str(
            r#"
            name = "orcid_present"
            field = "ORCID"
            predicate = { kind = "present_not_placeholder" }
            "#,
        )
        .unwrap();
        assert_eq!(rule.predicate, RulePredicate::PresentNotPlaceholder);
        assert!(rule.good.is_empty());
    }

    #[test]
    fn dimension_serde_and_violation_codes() {
        assert_eq!(
            serde_json::to_string(&Dimension::Completeness).unwrap(),
            "\"completeness\""
        );
        assert_eq!(
            serde_json::from_str::<Dimension>("\"timeliness\"").unwrap(),
            Dimension::Timeliness
        );
        assert_eq!(
            Dimension::Completeness.violation_code(),
            DefectCode::MissingInfo
        );
        assert_eq!(Dimension::Correctness.violation_code(), DefectCode::Typo);
        assert_eq!(
            Dimension::Consistency.violation_code(),
            DefectCode::Contradictory
        );
        assert_eq!(Dimension::Timeliness.violation_code(), DefectCode::Obsolete);
    }
}
