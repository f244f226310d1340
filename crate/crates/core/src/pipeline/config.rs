use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::consolidate::{PolicyError, SurvivorshipPolicy, SurvivorshipRule};
use crate::enrich::{Gazetteer, GazetteerError};
use crate::matching::{MatchConfig, MatchConfigError};
use crate::model::{FieldKind, FieldSchema, Schema, SchemaError};
use crate::parse::{Lexicon, LexiconError, Lexicons};
use crate::quality::{
    recommend, QualityConfig, QualityConfigError, RuleContext, StrategyCuts, StrategyError,
};
use crate::standardize::StandardizeOptions;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema: RawSchema,
    lexicons: RawLexicons,
    gazetteer: RawGazetteer,
    #[serde(default)]
    standardize: RawStandardize,
    matching: Option<MatchConfig>,
    survivorship: Option<RawSurvivorship>,
    quality: QualityConfig,
    strategy: RawStrategy,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchema {
    fields: Vec<FieldSchema>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLexicons {
    titles: PathBuf,
    street_types: PathBuf,
    state_codes: PathBuf,
    given_names: PathBuf,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGazetteer {
    path: PathBuf,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStandardize {
    two_digit_year_pivot: Option<u32>,
    six_digit_date_heuristic: Option<bool>,
    placeholder_ids: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurvivorship {
    rule_order: Vec<SurvivorshipRule>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStrategy {
    importance: f64,
    change_frequency: f64,
    importance_cut: Option<f64>,
    frequency_cut: Option<f64>,
}

/// The dataset's importance and volatility, plus the quadrant cuts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrategySettings {
    pub importance: f64,
    pub change_frequency: f64,
    pub cuts: StrategyCuts,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("schema must declare exactly one {kind} field, found {count}")]
    SchemaShape { kind: &'static str, count: usize },
    #[error("lexicon {name}: {source}")]
    Lexicon {
        name: &'static str,
        source: LexiconError,
    },
    #[error(transparent)]
    Gazetteer(#[from] GazetteerError),
    #[error(transparent)]
    Match(#[from] MatchConfigError),
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Quality(#[from] QualityConfigError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// Everything the pipeline needs, loaded and validated. Construction
/// fails rather than letting a bad setting surface mid-run.
#[derive(Debug)]
pub struct PipelineConfig {
    pub schema: Schema,
    pub lexicons: Lexicons,
    pub gazetteer: Gazetteer,
    pub standardize: StandardizeOptions,
    pub matching: MatchConfig,
    pub survivorship: SurvivorshipPolicy,
    pub quality: QualityConfig,
    pub strategy: StrategySettings,
}

impl PipelineConfig {
    /// Loads a TOML config. Relative paths inside it are resolved
    /// against the directory holding the file.
    pub fn load(path: &Path) -> Result<PipelineConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let raw: RawConfig = toml::from_str(&text).map_err(|e| ConfigError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let config_dir = path.parent().unwrap_or_else(|| Path::new("."));

        let schema = Schema::new(raw.schema.fields)?;
        for (kind, name) in [
            (FieldKind::FreeText, "free_text"),
            (FieldKind::PersonName, "person_name"),
            (FieldKind::Identifier, "identifier"),
            (FieldKind::Date, "date"),
            (FieldKind::Address, "address"),
        ] {
            let count = schema.fields().iter().filter(|f| f.kind == kind).count();
            if count != 1 {
                return Err(ConfigError::SchemaShape { kind: name, count });
            }
        }

        let load_lexicon = |name, rel: &Path| {
            Lexicon::load(&config_dir.join(rel))
                .map_err(|source| ConfigError::Lexicon { name, source })
        };
        let mut lexicons = Lexicons {
            titles: load_lexicon("titles", &raw.lexicons.titles)?,
            street_types: load_lexicon("street_types", &raw.lexicons.street_types)?,
            state_codes: load_lexicon("state_codes", &raw.lexicons.state_codes)?,
            given_names: load_lexicon("given_names", &raw.lexicons.given_names)?,
            ..Lexicons::default()
        };
        let gazetteer = Gazetteer::load(&config_dir.join(&raw.gazetteer.path))?;
        lexicons.set_known_zips(gazetteer.known_zips().map(str::to_string));

        let mut standardize = StandardizeOptions::default();
        if let Some(pivot) = raw.standardize.two_digit_year_pivot {
            standardize.date.two_digit_year_pivot = pivot;
        }
        if let Some(heuristic) = raw.standardize.six_digit_date_heuristic {
            standardize.date.six_digit_date_heuristic = heuristic;
        }
        if let Some(placeholders) = raw.standardize.placeholder_ids {
            standardize.id.placeholder_ids = placeholders;
        }

        let matching = raw.matching.unwrap_or_default();
        matching.validate()?;

        let survivorship = match raw.survivorship {
            Some(s) => SurvivorshipPolicy::new(s.rule_order)?,
            None => SurvivorshipPolicy::default_order(),
        };

        let strategy = StrategySettings {
            importance: raw.strategy.importance,
            change_frequency: raw.strategy.change_frequency,
            cuts: StrategyCuts {
                importance_cut: raw
                    .strategy
                    .importance_cut
                    .unwrap_or(StrategyCuts::default().importance_cut),
                frequency_cut: raw
                    .strategy
                    .frequency_cut
                    .unwrap_or(StrategyCuts::default().frequency_cut),
            },
        };
        recommend(
            strategy.importance,
            strategy.change_frequency,
            &strategy.cuts,
        )?;

        let config = PipelineConfig {
            schema,
            lexicons,
            gazetteer,
            standardize,
            matching,
            survivorship,
            quality: raw.quality,
            strategy,
        };
        config.quality.validate()?;
        config.quality.self_check(config.rule_context())?;
        Ok(config)
    }

    pub fn rule_context(&self) -> RuleContext<'_> {
        RuleContext {
            id: &self.standardize.id,
            date: &self.standardize.date,
            gazetteer: Some(&self.gazetteer),
        }
    }
}
