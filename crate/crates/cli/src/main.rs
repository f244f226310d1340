use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use gild_core::pipeline::{
    now_rfc3339, run_pipeline, run_stage, PipelineConfig, PipelineError, Stage, StageRun,
    StageSummary,
};
use gild_core::quality::recommend;

/// Rule-driven cleansing, deduplication, and quality assessment for
/// research-information records.
#[derive(Parser)]
#[command(name = "gild", version, about)]
struct Cli {
    /// Pipeline configuration file (TOML)
    #[arg(long, short, global = true)]
    config: Option<PathBuf>,

    /// Raw dataset to read (CSV, or JSON objects one per line)
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,

    /// Directory stage artifacts are written to and read from
    #[arg(long, short, global = true, default_value = "out")]
    out_dir: PathBuf,

    /// Print stage summaries as JSON instead of prose
    #[arg(long, global = true)]
    stage_dump: bool,

    /// Timestamp recorded in reports and the trend log (RFC 3339);
    /// defaults to the current time
    #[arg(long, global = true)]
    recorded_at: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ingest the dataset and profile field patterns
    Profile,
    /// Score quality before cleansing and pick a strategy
    Assess,
    /// Parse and standardize every record
    Cleanse,
    /// Fill city and state from the gazetteer
    Enrich,
    /// Cluster records that refer to the same entity
    Match,
    /// Merge clusters into golden records and repair members
    Consolidate,
    /// Run all six stages in order
    Run,
    /// Print the maintenance strategy for the configured dataset
    Recommend {
        /// Override the configured dataset importance (0 to 1)
        #[arg(long)]
        importance: Option<f64>,
        /// Override the configured change frequency (0 to 1)
        #[arg(long)]
        frequency: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<PipelineError>() {
                Some(PipelineError::Config(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let config_path = cli
        .config
        .context("a pipeline configuration is required; pass --config <file>")?;
    let config = PipelineConfig::load(&config_path).map_err(PipelineError::from)?;

    if let Command::Recommend {
        importance,
        frequency,
    } = &cli.command
    {
        let settings = config.strategy;
        let recommendation = recommend(
            importance.unwrap_or(settings.importance),
            frequency.unwrap_or(settings.change_frequency),
            &settings.cuts,
        )
        .map_err(PipelineError::from)?;
        println!("{}", serde_json::to_string_pretty(&recommendation)?);
        return Ok(());
    }

    let recorded_at = cli.recorded_at.unwrap_or_else(now_rfc3339);
    let stage_run = StageRun {
        config: &config,
        input: cli.input.as_deref(),
        out_dir: &cli.out_dir,
        recorded_at: &recorded_at,
    };
    let summaries = match cli.command {
        Command::Profile => vec![run_stage(Stage::Profile, &stage_run)?],
        Command::Assess => vec![run_stage(Stage::Assess, &stage_run)?],
        Command::Cleanse => vec![run_stage(Stage::Cleanse, &stage_run)?],
        Command::Enrich => vec![run_stage(Stage::Enrich, &stage_run)?],
        Command::Match => vec![run_stage(Stage::Match, &stage_run)?],
        Command::Consolidate => vec![run_stage(Stage::Consolidate, &stage_run)?],
        Command::Run => run_pipeline(&stage_run)?,
        Command::Recommend { .. } => unreachable!("handled above"),
    };
    report(&summaries, cli.stage_dump)?;
    Ok(())
}

fn report(summaries: &[StageSummary], stage_dump: bool) -> anyhow::Result<()> {
    if stage_dump {
        println!("{}", serde_json::to_string_pretty(summaries)?);
    } else {
        for summary in summaries {
            println!(
                "{}: {} [{}]",
                summary.stage,
                summary.message,
                summary.artifacts.join(", ")
            );
        }
    }
    Ok(())
}
