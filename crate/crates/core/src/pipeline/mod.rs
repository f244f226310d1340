//! File-driven pipeline: each stage reads the raw dataset or a prior
//! stage's artifacts from one output directory and writes its own.

mod config;
mod render;
mod stages;

pub use config::{ConfigError, PipelineConfig, StrategySettings};
pub use render::{cleansed_row, enriched_row, golden_row, ENRICHED_HEADER, TABLE_HEADER};
pub use stages::{
    now_rfc3339, run_pipeline, run_stage, Enveloped, PipelineError, Stage, StageRun, StageSummary,
    CLEANSED_CSV, CLEANSED_JSONL, CLEANSED_PREMERGE_CSV, CLUSTERS_JSON, CONSOLIDATED_CSV,
    ENRICHED_CSV, ENRICHED_JSONL, GOLDEN_CSV, INGEST_JSON, LINEAGE_JSON, PROFILE_JSON,
    QUALITY_AFTER_JSON, QUALITY_BEFORE_JSON, STRATEGY_JSON, TREND_JSONL,
};
