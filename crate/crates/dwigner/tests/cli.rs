//! Black-box tests of the `dwigner` binary: exit codes, output formats,
//! file handling and the tolerance override.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dwigner"));
    cmd.env_remove("DWIGNER_TOLERANCE");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(output: &Output) -> i32 {
    output.status.code().unwrap()
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn temp_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dwigner-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn grid_csv_has_the_documented_shape() {
    let output = run(&["grid", "--n", "3", "--state", "pos:1", "--format", "csv"]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,p,value");
    assert_eq!(lines.len(), 1 + 36);
    // Exactly two nonzero columns, q = 2 and q = 5.
    let mut nonzero_columns = std::collections::BTreeSet::new();
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 3);
        if cols[2].parse::<f64>().unwrap() != 0.0 {
            nonzero_columns.insert(cols[0].parse::<i64>().unwrap());
        }
    }
    assert_eq!(nonzero_columns.into_iter().collect::<Vec<_>>(), vec![2, 5]);
}

#[test]
fn grid_json_round_trips_and_reaches_files() {
    let path = temp_dir().join("grid.json");
    let path_arg = path.to_str().unwrap();
    let output = run(&[
        "grid", "--n", "2", "--state", "mom:1", "--format", "json", "--out", path_arg,
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    assert!(stdout(&output).is_empty(), "--out should leave stdout empty");
    let text = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["n"], 2);
    assert_eq!(value["grid_kind"], "single");
    assert_eq!(value["metadata"]["state"], "mom:1");
    assert_eq!(value["values"].as_array().unwrap().len(), 16);
    // Re-serializing the parsed document is lossless.
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(value, reparsed);
}

#[test]
fn grid_composite_spec_produces_four_index_rows() {
    let output = run(&["grid", "--n", "2", "--state", "bell:0,1"]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(text.starts_with("q1,p1,q2,p2,value\n"));
    assert_eq!(text.lines().count(), 1 + 256);
}

#[test]
fn malformed_arguments_exit_with_two() {
    // Unknown state kind, malformed indices, bad dimension, unknown flag.
    for args in [
        vec!["grid", "--n", "3", "--state", "nonsense:1"],
        vec!["grid", "--n", "3", "--state", "pos:x"],
        vec!["grid", "--n", "3", "--state", "bell:1"],
        vec!["grid", "--n", "1", "--state", "pos:0"],
        vec!["grid", "--n", "3", "--state", "pos:1", "--format", "xml"],
        vec!["grid", "--n", "three", "--state", "pos:1"],
        vec!["tomo", "--n", "2", "--state", "bell:0,0", "--point", "1,2,3"],
        vec!["verify", "--n", "1"],
        vec!["verify", "--n", "2,x"],
    ] {
        let output = run(&args);
        assert_eq!(code(&output), 2, "{args:?} should exit 2; stderr: {}", stderr(&output));
        assert!(!stderr(&output).is_empty(), "{args:?} should explain itself on stderr");
    }
}

#[test]
fn unusable_data_exits_with_three() {
    let dir = temp_dir();
    // Missing file.
    let missing = format!("file:{}", dir.join("absent.json").display());
    let output = run(&["grid", "--n", "2", "--state", &missing]);
    assert_eq!(code(&output), 3, "stderr: {}", stderr(&output));

    // Dimension mismatch between the file and the grid.
    let wrong_dim = dir.join("wrong-dim.json");
    std::fs::write(&wrong_dim, "[[1.0,0.0],[0.0,0.0],[0.0,0.0]]").unwrap();
    let arg = format!("file:{}", wrong_dim.display());
    let output = run(&["grid", "--n", "2", "--state", &arg]);
    assert_eq!(code(&output), 3, "stderr: {}", stderr(&output));

    // Unnormalized pure state.
    let unnormalized = dir.join("unnormalized.json");
    std::fs::write(&unnormalized, "[[1.0,0.0],[1.0,0.0]]").unwrap();
    let arg = format!("file:{}", unnormalized.display());
    let output = run(&["grid", "--n", "2", "--state", &arg]);
    assert_eq!(code(&output), 3);

    // An entangled-pair spec cannot feed the single-system protocol.
    let output = run(&["teleport", "--n", "2", "--state", "bell:0,0"]);
    assert_eq!(code(&output), 3);

    // Composite grids beyond the materialization bound are refused.
    let output = run(&["grid", "--n", "5", "--state", "bell:0,0"]);
    assert_eq!(code(&output), 3, "stderr: {}", stderr(&output));
}

#[test]
fn teleport_reports_trials_and_respects_seeds() {
    let output = run(&[
        "teleport", "--n", "2", "--state", "pos:0", "--seed", "9", "--trials", "3",
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert_eq!(text.lines().count(), 1 + 3 + 1);
    for trial in 1..=3 {
        assert!(text.contains(&format!("trial {trial}: outcome = (")), "missing trial {trial}");
    }
    assert!(text.contains("probability = 0.25"));
    assert!(text.contains("summary: trials = 3"));
    assert!(text.contains("result = pass"));

    // A different seed can produce a different outcome sequence.
    let other = run(&[
        "teleport", "--n", "2", "--state", "pos:0", "--seed", "10", "--trials", "3",
    ]);
    assert_eq!(code(&other), 0);
}

#[test]
fn teleport_mixed_input_reports_trace_distance() {
    let dir = temp_dir();
    let path = dir.join("mixed.json");
    std::fs::write(&path, "[[[0.75,0.0],[0.0,0.0]],[[0.0,0.0],[0.25,0.0]]]").unwrap();
    let arg = format!("file:{}", path.display());
    let output = run(&["teleport", "--n", "2", "--state", &arg, "--trials", "2"]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("trace_distance = "), "mixed input should report distances:\n{text}");
    assert!(text.contains("max_trace_distance = "));
}

#[test]
fn tomo_agrees_with_itself_at_any_point() {
    let output = run(&["tomo", "--n", "3", "--state", "random:4", "--point", "5,1,2,4"]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("circuit value = "));
    assert!(text.contains("direct value  = "));
    assert!(text.contains("difference    = "));
    assert!(text.contains("result = pass"));
}

#[test]
fn tolerance_override_changes_only_the_verdict() {
    // A stricter threshold may flip the verdict on rounding noise...
    let strict = bin()
        .args(["tomo", "--n", "2", "--state", "random:1", "--point", "1,1,0,0"])
        .env("DWIGNER_TOLERANCE", "1e-30")
        .output()
        .unwrap();
    let default = run(&["tomo", "--n", "2", "--state", "random:1", "--point", "1,1,0,0"]);
    assert_eq!(code(&default), 0);
    // ...but never changes the computed values themselves.
    let strict_text = stdout(&strict);
    let default_text = stdout(&default);
    let values = |text: &str| -> Vec<String> {
        text.lines().filter(|l| l.starts_with("circuit value")).map(str::to_string).collect()
    };
    assert!(!values(&default_text).is_empty());
    assert_eq!(values(&strict_text), values(&default_text));

    // A malformed override is a usage error.
    let bad = bin()
        .args(["verify", "--n", "2"])
        .env("DWIGNER_TOLERANCE", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2, "stderr: {}", stderr(&bad));

    // A generous override still passes.
    let loose = bin()
        .args(["tomo", "--n", "2", "--state", "random:1", "--point", "1,1,0,0"])
        .env("DWIGNER_TOLERANCE", "1e-3")
        .output()
        .unwrap();
    assert_eq!(code(&loose), 0);
}

#[test]
fn verify_failure_exits_with_one() {
    // With a threshold of zero at least one suite reports rounding noise.
    let output = bin()
        .args(["verify", "--n", "2"])
        .env("DWIGNER_TOLERANCE", "1e-300")
        .output()
        .unwrap();
    assert_eq!(code(&output), 1);
    let text = stdout(&output);
    assert!(text.contains("FAIL"));
    assert!(text.contains("overall: FAIL"));
}

#[test]
fn help_lists_all_subcommands() {
    let output = run(&["--help"]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    for subcommand in ["grid", "teleport", "tomo", "verify"] {
        assert!(text.contains(subcommand), "help should mention `{subcommand}`");
    }
}
