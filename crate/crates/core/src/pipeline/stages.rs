use std::collections::BTreeMap;
use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use thiserror::Error;

use super::config::{ConfigError, PipelineConfig};
use super::render::{cleansed_row, enriched_row, golden_row, ENRICHED_HEADER, TABLE_HEADER};
use crate::consolidate::{consolidate_clusters, ConsolidateError};
use crate::enrich::enrich_dataset;
use crate::matching::{match_dataset, MatchCluster};
use crate::model::{infer_format, load_dataset, IngestError, IngestReport, RawRecord, RecordRef};
use crate::parse::profile_field;
use crate::quality::{
    assess, recommend, record_trend, AssessError, StrategyError, TrendError, TrendPoint,
};
use crate::standardize::{cleanse_dataset, CleansedRecord};

pub const PROFILE_JSON: &str = "profile.json";
pub const INGEST_JSON: &str = "ingest.json";
pub const QUALITY_BEFORE_JSON: &str = "quality_before.json";
pub const STRATEGY_JSON: &str = "strategy.json";
pub const TREND_JSONL: &str = "trend.jsonl";
pub const CLEANSED_PREMERGE_CSV: &str = "cleansed_premerge.csv";
pub const CLEANSED_JSONL: &str = "cleansed.jsonl";
pub const ENRICHED_CSV: &str = "enriched.csv";
pub const ENRICHED_JSONL: &str = "enriched.jsonl";
pub const CLUSTERS_JSON: &str = "clusters.json";
pub const GOLDEN_CSV: &str = "golden.csv";
pub const CONSOLIDATED_CSV: &str = "consolidated.csv";
pub const CLEANSED_CSV: &str = "cleansed.csv";
pub const LINEAGE_JSON: &str = "lineage.json";
pub const QUALITY_AFTER_JSON: &str = "quality_after.json";

/// The pipeline stages, in run order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Profile,
    Assess,
    Cleanse,
    Enrich,
    Match,
    Consolidate,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Profile,
        Stage::Assess,
        Stage::Cleanse,
        Stage::Enrich,
        Stage::Match,
        Stage::Consolidate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Profile => "profile",
            Stage::Assess => "assess",
            Stage::Cleanse => "cleanse",
            Stage::Enrich => "enrich",
            Stage::Match => "match",
            Stage::Consolidate => "consolidate",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Run bookkeeping wrapped around a report so that wall-clock data
/// never mixes with the measured content.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Enveloped<T> {
    pub metadata: BTreeMap<String, String>,
    pub report: T,
}

impl<T> Enveloped<T> {
    pub fn new(recorded_at: &str, report: T) -> Self {
        let mut metadata = BTreeMap::new();
        metadata.insert("recorded_at".to_string(), recorded_at.to_string());
        Enveloped { metadata, report }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("stage {stage} reads the raw dataset, but no input path was given")]
    MissingInput { stage: Stage },
    #[error(
        "stage {stage} needs {artifact}; run the {producer} stage into this output directory first"
    )]
    MissingPrerequisite {
        stage: Stage,
        producer: Stage,
        artifact: &'static str,
    },
    #[error("failed to write {path}: {message}")]
    Write { path: PathBuf, message: String },
    #[error("failed to read {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error(transparent)]
    Assess(#[from] AssessError),
    #[error(transparent)]
    Consolidate(#[from] ConsolidateError),
    #[error(transparent)]
    Trend(#[from] TrendError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// One stage invocation: where to read, where to write, and the
/// timestamp stamped into report metadata and the trend log.
#[derive(Clone, Copy, Debug)]
pub struct StageRun<'a> {
    pub config: &'a PipelineConfig,
    pub input: Option<&'a Path>,
    pub out_dir: &'a Path,
    pub recorded_at: &'a str,
}

/// What a stage produced, for humans and logs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageSummary {
    pub stage: Stage,
    pub artifacts: Vec<String>,
    pub message: String,
}

/// Current wall-clock time in whole seconds, UTC.
pub fn now_rfc3339() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

pub fn run_stage(stage: Stage, run: &StageRun<'_>) -> Result<StageSummary, PipelineError> {
    std::fs::create_dir_all(run.out_dir).map_err(|e| write_error(run.out_dir, e))?;
    match stage {
        Stage::Profile => run_profile(run),
        Stage::Assess => run_assess(run),
        Stage::Cleanse => run_cleanse(run),
        Stage::Enrich => run_enrich(run),
        Stage::Match => run_match(run),
        Stage::Consolidate => run_consolidate(run),
    }
}

/// Runs every stage in order against one output directory.
pub fn run_pipeline(run: &StageRun<'_>) -> Result<Vec<StageSummary>, PipelineError> {
    Stage::ALL
        .iter()
        .map(|&stage| run_stage(stage, run))
        .collect()
}

fn ingest(stage: Stage, run: &StageRun<'_>) -> Result<IngestReport, PipelineError> {
    let input = run.input.ok_or(PipelineError::MissingInput { stage })?;
    Ok(load_dataset(
        input,
        infer_format(input),
        &run.config.schema,
    )?)
}

fn run_profile(run: &StageRun<'_>) -> Result<StageSummary, PipelineError> {
    let report = ingest(Stage::Profile, run)?;
    let profiles: Vec<_> = run
        .config
        .schema
        .fields()
        .iter()
        .map(|field| profile_field(&report.records, field, &run.config.lexicons))
        .collect();
    write_json(&run.out_dir.join(PROFILE_JSON), &profiles)?;
    write_json(&run.out_dir.join(INGEST_JSON), &report)?;
    Ok(StageSummary {
        stage: Stage::Profile,
        artifacts: vec![PROFILE_JSON.into(), INGEST_JSON.into()],
        message: format!(
            "{} records ingested, {} rows skipped, {} fields profiled",
            report.records.len(),
            report.skipped.len(),
            profiles.len()
        ),
    })
}

fn run_assess(run: &StageRun<'_>) -> Result<StageSummary, PipelineError> {
    let report = ingest(Stage::Assess, run)?;
    let quality = assess(
        &report.records,
        &run.config.quality,
        run.config.rule_context(),
    )?;
    let strategy = run.config.strategy;
    let recommendation = recommend(
        strategy.importance,
        strategy.change_frequency,
        &strategy.cuts,
    )?;
    write_json(
        &run.out_dir.join(QUALITY_BEFORE_JSON),
        &Enveloped::new(run.recorded_at, &quality),
    )?;
    write_json(
        &run.out_dir.join(STRATEGY_JSON),
        &Enveloped::new(run.recorded_at, &recommendation),
    )?;
    append_trend(run, TrendPoint::from_report(&quality, run.recorded_at))?;
    write_json(&run.out_dir.join(INGEST_JSON), &report)?;
    Ok(StageSummary {
        stage: Stage::Assess,
        artifacts: vec![
            QUALITY_BEFORE_JSON.into(),
            STRATEGY_JSON.into(),
            TREND_JSONL.into(),
            INGEST_JSON.into(),
        ],
        message: format!(
            "aggregate {:.4}, {} (threshold {:.2}), strategy {:?}",
            quality.aggregate,
            if quality.acceptable {
                "acceptable"
            } else {
                "not acceptable"
            },
            quality.acceptability_threshold,
            recommendation.strategy
        ),
    })
}

fn run_cleanse(run: &StageRun<'_>) -> Result<StageSummary, PipelineError> {
    let report = ingest(Stage::Cleanse, run)?;
    let config = run.config;
    let cleansed = cleanse_dataset(
        &report.records,
        &config.schema,
        &config.lexicons,
        &config.gazetteer,
        &config.standardize,
    );
    write_csv(
        &run.out_dir.join(CLEANSED_PREMERGE_CSV),
        TABLE_HEADER,
        cleansed.iter().map(cleansed_row),
    )?;
    write_jsonl(&run.out_dir.join(CLEANSED_JSONL), &cleansed)?;
    write_json(&run.out_dir.join(INGEST_JSON), &report)?;
    Ok(StageSummary {
        stage: Stage::Cleanse,
        artifacts: vec![
            CLEANSED_PREMERGE_CSV.into(),
            CLEANSED_JSONL.into(),
            INGEST_JSON.into(),
        ],
        message: format!("{} records cleansed", cleansed.len()),
    })
}

fn run_enrich(run: &StageRun<'_>) -> Result<StageSummary, PipelineError> {
    let source = require_artifact(run, Stage::Enrich, Stage::Cleanse, CLEANSED_JSONL)?;
    let mut records: Vec<CleansedRecord> = read_jsonl(&source)?;
    let issues = enrich_dataset(&mut records, &run.config.gazetteer);
    write_csv(
        &run.out_dir.join(ENRICHED_CSV),
        ENRICHED_HEADER,
        records.iter().map(enriched_row),
    )?;
    write_jsonl(&run.out_dir.join(ENRICHED_JSONL), &records)?;
    Ok(StageSummary {
        stage: Stage::Enrich,
        artifacts: vec![ENRICHED_CSV.into(), ENRICHED_JSONL.into()],
        message: format!(
            "{} records enriched, {} issues",
            records.len(),
            issues.len()
        ),
    })
}

fn run_match(run: &StageRun<'_>) -> Result<StageSummary, PipelineError> {
    let source = require_artifact(run, Stage::Match, Stage::Enrich, ENRICHED_JSONL)?;
    let records: Vec<CleansedRecord> = read_jsonl(&source)?;
    let clusters = match_dataset(&records, &run.config.matching);
    write_json(&run.out_dir.join(CLUSTERS_JSON), &clusters)?;
    Ok(StageSummary {
        stage: Stage::Match,
        artifacts: vec![CLUSTERS_JSON.into()],
        message: format!("{} clusters over {} records", clusters.len(), records.len()),
    })
}

fn run_consolidate(run: &StageRun<'_>) -> Result<StageSummary, PipelineError> {
    let enriched_path = require_artifact(run, Stage::Consolidate, Stage::Enrich, ENRICHED_JSONL)?;
    let clusters_path = require_artifact(run, Stage::Consolidate, Stage::Match, CLUSTERS_JSON)?;
    let records: Vec<CleansedRecord> = read_jsonl(&enriched_path)?;
    let clusters: Vec<MatchCluster> = read_json(&clusters_path)?;
    let config = run.config;
    let consolidated =
        consolidate_clusters(&records, &clusters, &config.survivorship, &config.schema)?;

    write_csv(
        &run.out_dir.join(GOLDEN_CSV),
        TABLE_HEADER,
        consolidated.iter().map(|c| golden_row(&c.golden)),
    )?;
    write_csv(
        &run.out_dir.join(CONSOLIDATED_CSV),
        TABLE_HEADER,
        consolidated
            .iter()
            .flat_map(|c| c.identity_members())
            .map(cleansed_row),
    )?;

    let mut final_records = records;
    let index: BTreeMap<RecordRef, usize> = final_records
        .iter()
        .enumerate()
        .map(|(i, r)| (r.record_ref.clone(), i))
        .collect();
    for cluster in &consolidated {
        for member in &cluster.members {
            if let Some(&i) = index.get(&member.record_ref) {
                final_records[i] = member.clone();
            }
        }
    }
    write_csv(
        &run.out_dir.join(CLEANSED_CSV),
        TABLE_HEADER,
        final_records.iter().map(cleansed_row),
    )?;

    let goldens: Vec<_> = consolidated.iter().map(|c| &c.golden).collect();
    write_json(&run.out_dir.join(LINEAGE_JSON), &goldens)?;

    let raw_again: Vec<RawRecord> = final_records
        .iter()
        .map(|r| r.to_raw_record(&config.schema))
        .collect();
    let after = assess(&raw_again, &config.quality, config.rule_context())?;
    write_json(
        &run.out_dir.join(QUALITY_AFTER_JSON),
        &Enveloped::new(run.recorded_at, &after),
    )?;
    append_trend(run, TrendPoint::from_report(&after, run.recorded_at))?;

    let repair_count: usize = consolidated.iter().map(|c| c.repairs.len()).sum();
    Ok(StageSummary {
        stage: Stage::Consolidate,
        artifacts: vec![
            GOLDEN_CSV.into(),
            CONSOLIDATED_CSV.into(),
            CLEANSED_CSV.into(),
            LINEAGE_JSON.into(),
            QUALITY_AFTER_JSON.into(),
            TREND_JSONL.into(),
        ],
        message: format!(
            "{} golden records, {} repairs, aggregate {:.4} after cleansing",
            consolidated.len(),
            repair_count,
            after.aggregate
        ),
    })
}

fn require_artifact(
    run: &StageRun<'_>,
    stage: Stage,
    producer: Stage,
    artifact: &'static str,
) -> Result<PathBuf, PipelineError> {
    let path = run.out_dir.join(artifact);
    if path.is_file() {
        Ok(path)
    } else {
        Err(PipelineError::MissingPrerequisite {
            stage,
            producer,
            artifact,
        })
    }
}

fn append_trend(run: &StageRun<'_>, point: TrendPoint) -> Result<(), PipelineError> {
    let path = run.out_dir.join(TREND_JSONL);
    let mut points: Vec<TrendPoint> = if path.is_file() {
        read_jsonl(&path)?
    } else {
        Vec::new()
    };
    let line = serde_json::to_string(&point).map_err(|e| write_error(&path, e))?;
    record_trend(&mut points, point)?;
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .map_err(|e| write_error(&path, e))?;
    writeln!(file, "{line}").map_err(|e| write_error(&path, e))?;
    Ok(())
}

fn write_error(path: &Path, message: impl fmt::Display) -> PipelineError {
    PipelineError::Write {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

fn read_error(path: &Path, message: impl fmt::Display) -> PipelineError {
    PipelineError::Read {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), PipelineError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| write_error(path, e))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| write_error(path, e))
}

fn write_jsonl<T: Serialize>(path: &Path, values: &[T]) -> Result<(), PipelineError> {
    let mut text = String::new();
    for value in values {
        text.push_str(&serde_json::to_string(value).map_err(|e| write_error(path, e))?);
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| write_error(path, e))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, PipelineError> {
    let text = std::fs::read_to_string(path).map_err(|e| read_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| read_error(path, e))
}

fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, PipelineError> {
    let text = std::fs::read_to_string(path).map_err(|e| read_error(path, e))?;
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str(line)
                .map_err(|e| read_error(path, format_args!("line {}: {}", i + 1, e)))
        })
        .collect()
}

fn write_csv<const N: usize>(
    path: &Path,
    header: [&str; N],
    rows: impl IntoIterator<Item = [String; N]>,
) -> Result<(), PipelineError> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| write_error(path, e))?;
    writer
        .write_record(header)
        .map_err(|e| write_error(path, e))?;
    for row in rows {
        writer
            .write_record(&row)
            .map_err(|e| write_error(path, e))?;
    }
    writer.flush().map_err(|e| write_error(path, e))
}
