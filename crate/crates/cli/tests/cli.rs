//! The binary end to end: exit codes, artifacts on disk, and the
//! machine-readable dumps.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Output;

const RECORDED_AT: &str = "2026-01-01T00:00:00Z";

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(rel)
}

fn gild(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_gild"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_arg(path: &Path) -> &str {
    path.to_str().expect("paths are utf-8")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn run_fixture(out_dir: &Path, extra: &[&str]) -> Output {
    let config = fixture("pipeline.toml");
    let input = fixture("authors.csv");
    let mut args = vec![
        "--config",
        path_arg(&config),
        "--input",
        path_arg(&input),
        "--out-dir",
        path_arg(out_dir),
        "--recorded-at",
        RECORDED_AT,
    ];
    args.extend_from_slice(extra);
    args.push("run");
    gild(&args)
}

#[test]
fn run_writes_the_reference_golden_table() {
    let out = tempfile::tempdir().expect("tempdir");
    let output = run_fixture(out.path(), &[]);
    assert!(output.status.success(), "stderr: {}", stderr_of(&output));

    let golden = fs::read(out.path().join("golden.csv")).expect("golden.csv reads");
    let expected = fs::read(fixture("expected/golden.csv")).expect("reference table reads");
    assert_eq!(golden, expected);

    let stdout = stdout_of(&output);
    assert!(
        stdout.contains("consolidate: 2 golden records"),
        "stdout: {stdout}"
    );
}

#[test]
fn repeated_runs_write_identical_bytes() {
    let first = tempfile::tempdir().expect("tempdir");
    let second = tempfile::tempdir().expect("tempdir");
    assert!(run_fixture(first.path(), &[]).status.success());
    assert!(run_fixture(second.path(), &[]).status.success());

    let mut names = Vec::new();
    for entry in fs::read_dir(first.path()).expect("out dir reads") {
        let entry = entry.expect("dir entry reads");
        let name = entry
            .file_name()
            .into_string()
            .expect("artifact names are utf-8");
        let a = fs::read(entry.path()).expect("artifact reads");
        let b = fs::read(second.path().join(&name)).expect("artifact exists in both runs");
        assert_eq!(a, b, "{name} differs between runs");
        names.push(name);
    }
    assert!(names.contains(&"golden.csv".to_string()));
}

#[test]
fn stage_dump_is_machine_readable() {
    let out = tempfile::tempdir().expect("tempdir");
    let output = run_fixture(out.path(), &["--stage-dump"]);
    assert!(output.status.success(), "stderr: {}", stderr_of(&output));

    let summaries: serde_json::Value =
        serde_json::from_str(&stdout_of(&output)).expect("stdout parses as JSON");
    let stages: Vec<&str> = summaries
        .as_array()
        .expect("a summary per stage")
        .iter()
        .map(|s| s["stage"].as_str().expect("stage name"))
        .collect();
    assert_eq!(
        stages,
        [
            "profile",
            "assess",
            "cleanse",
            "enrich",
            "match",
            "consolidate"
        ]
    );
}

#[test]
fn recommend_prints_the_strategy() {
    let config = fixture("pipeline.toml");
    let output = gild(&["--config", path_arg(&config), "recommend"]);
    assert!(output.status.success(), "stderr: {}", stderr_of(&output));
    let recommendation: serde_json::Value =
        serde_json::from_str(&stdout_of(&output)).expect("stdout parses as JSON");
    assert_eq!(recommendation["strategy"], "REACTIVE");

    let output = gild(&[
        "--config",
        path_arg(&config),
        "recommend",
        "--importance",
        "0.2",
        "--frequency",
        "0.9",
    ]);
    assert!(output.status.success(), "stderr: {}", stderr_of(&output));
    let recommendation: serde_json::Value =
        serde_json::from_str(&stdout_of(&output)).expect("stdout parses as JSON");
    assert_eq!(recommendation["strategy"], "LAISSEZ_FAIRE");
    assert_eq!(recommendation["importance"], 0.2);
}

#[test]
fn a_bad_config_exits_one() {
    let dir = tempfile::tempdir().expect("tempdir");
    let bad = dir.path().join("pipeline.toml");
    let text = fs::read_to_string(fixture("pipeline.toml")).expect("bundled config reads");
    let second_date = "[[schema.fields]]\nname = \"Second Date\"\nkind = \"date\"\nrequired = false\n\n[lexicons]";
    fs::write(&bad, text.replace("[lexicons]", second_date)).expect("edited config writes");

    let output = gild(&["--config", path_arg(&bad), "run"]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("exactly one"), "stderr: {stderr}");
}

#[test]
fn missing_prerequisites_exit_two() {
    let config = fixture("pipeline.toml");
    let out = tempfile::tempdir().expect("tempdir");
    let output = gild(&[
        "--config",
        path_arg(&config),
        "--out-dir",
        path_arg(out.path()),
        "match",
    ]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("enrich"), "stderr: {stderr}");
}

#[test]
fn a_missing_config_exits_two() {
    let output = gild(&["run"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("--config"), "stderr: {stderr}");
}
