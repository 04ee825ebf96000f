use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const EXAMPLE: &str = r#"{"M": [[0, 10], [9, 0]], "D": [[0, 0], [1, 0], [2, 9]], "C": [[0, 0], [[1, 3], 0], [[2, 3], 0]]}"#;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str], input: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectral-affine"))
        .args(args)
        .arg("--input")
        .arg(input)
        .env_remove("SPECTRAL_AFFINE_THREADS")
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn classify_scalar_three() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"M": [[3, 0], [0, 3]], "D": [[0, 0], [1, 0], [0, 1]]}"#);
    let out = run(&["classify"], &input);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["result"]["class"], "M1");
    assert_eq!(r["result"]["m1_criterion"], true);
    assert_eq!(r["result"]["digit_criterion"]["verdict"], "spectral");
}

#[test]
fn classify_report_round_trips() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"M": [[3, 1], [1, 4]]}"#);
    let out = run(&["classify"], &input);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(text.trim_end(), again);
}

#[test]
fn find_hadamard_proves_absence() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", EXAMPLE);
    let out = run(&["find-hadamard"], &input);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["found"], false);
    assert_eq!(r["result"]["search_space"], 3916);
}

#[test]
fn exhausted_budget_exits_two() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"M": [[3, 0], [0, 3]], "D": [[0, 0], [1, 0], [0, 1]]}"#);
    let out = run(&["find-hadamard", "--budget", "1"], &input);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["status"], "undetermined");
    assert_eq!(r["result"]["found"], "undetermined");
    assert_eq!(r["result"]["budget"], 1);

    let out = run(&["find-hadamard"], &input);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["found"], true);
}

#[test]
fn nstar_attains_nine() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"M": [[3, 1], [1, 4]], "D": [[0, 0], [1, 0], [0, 1]]}"#);
    let out = run(&["nstar", "--J", "6", "--R", "4"], &input);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["lower"], 9);
    assert_eq!(r["result"]["upper"], 9);
    assert_eq!(r["result"]["method"], "clique");
    assert_eq!(r["result"]["witness"].as_array().unwrap().len(), 9);
}

#[test]
fn floats_are_rejected() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"M": [[3, 0], [0, 3]], "D": [[0, 0], [0.5, 0], [0, 1]]}"#);
    let out = run(&["zero-set"], &input);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["kind"], "ParseError");
    assert!(r["error"]["message"].as_str().unwrap().contains("D[1][0]"));
}

#[test]
fn non_square_matrix_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"M": [[3, 0, 1], [0, 3, 1]], "D": [[0, 0], [1, 0], [0, 1]]}"#);
    let out = run(&["classify"], &input);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["kind"], "ValidationError");
}

#[test]
fn duplicate_digit_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"M": [[3, 0], [0, 3]], "D": [[0, 0], [1, 0], [1, 0]]}"#);
    let out = run(&["zero-set"], &input);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["kind"], "ValidationError");
}

#[test]
fn malformed_json_reports_position() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", "{\n  \"M\": [[3, 0], [0, 3]],\n  \"D\": [[0, 0]\n");
    let out = run(&["zero-set"], &input);
    assert_eq!(out.status.code(), Some(1));
    let msg = report(&out)["error"]["message"].as_str().unwrap().to_string();
    assert!(msg.contains("line 4"), "{msg}");
}

#[test]
fn library_errors_are_structured() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", EXAMPLE);
    let out = run(&["criterion-1-8"], &input);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["kind"], "DegenerateDigits");
}

#[test]
fn attractor_csv_header() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", EXAMPLE);
    let csv = dir.path().join("cloud.csv");
    let out = run(&["attractor", "--levels", "3", "--csv", csv.to_str().unwrap()], &input);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y"));
    assert_eq!(lines.count(), 27);
}

#[test]
fn q_scan_csv_and_json_agree() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", EXAMPLE);
    let csv = dir.path().join("q.csv");
    let out = run(&["q-scan", "--levels", "2", "--grid", "5", "--eta", "1/10", "--csv", csv.to_str().unwrap()], &input);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let values = r["result"]["values"].as_array().unwrap();
    assert_eq!(values.len(), 25);
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "x,y,value");
    let first: Vec<f64> = rows[1].split(',').map(|c| c.parse().unwrap()).collect();
    let json_first: Vec<f64> = values[0].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert_eq!(first, json_first);
    assert_eq!(first[0], -0.1);
    assert_eq!(r["parameters"]["eta"], serde_json::json!([1, 10]));
    let q_min = r["result"]["min_q"].as_f64().unwrap();
    assert!(q_min > 0.8 && q_min <= 1.0 + 1e-9);
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", EXAMPLE);
    for cmd in [&["q-scan", "--grid", "7"][..], &["find-hadamard"], &["attractor", "--seed", "11"]] {
        let runs: Vec<Value> = ["1", "4"]
            .iter()
            .map(|t| {
                let mut args = cmd.to_vec();
                args.extend(["--threads", t]);
                without_timing(report(&run(&args, &input)))
            })
            .collect();
        assert_eq!(runs[0], runs[1], "{cmd:?}");
    }
}

#[test]
fn rationals_round_trip_exactly() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"M": [[6, 3], [2, 6]], "D": [[0, 0], [1, 0], [0, 2]], "L": [128, 2], "j0": 2}"#);
    let out = run(&["nonspectral-cert"], &input);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["parameters"]["L"], serde_json::json!([64, 1]));
    assert_eq!(r["result"]["valid"], true);

    let input = write(&dir, "z.json", EXAMPLE);
    let r = report(&run(&["zero-set"], &input));
    assert_eq!(r["result"]["count"], 18);
    for p in r["result"]["points"].as_array().unwrap() {
        for c in p.as_array().unwrap() {
            let pair = c.as_array().unwrap();
            assert!(pair[1].as_u64().unwrap() > 0);
        }
    }
}

#[test]
fn text_format_is_readable() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", EXAMPLE);
    let out = run(&["infinite-orthogonal", "--format", "text"], &input);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("infinite-orthogonal [ok]"), "{text}");
    assert!(text.contains("exists: true"));
}
