use std::path::Path;
use std::process::{Command, Output};

use majorize::{generalized_compare, verify_certificate, Array, Certificate, Tolerance};

fn majorize(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majorize"))
        .args(args)
        .env_remove("MAJORIZE_EPS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_verdicts_and_exit_codes() {
    let out = majorize(&["check", "4,4,4,4", "14,1,1,1"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "LeftStrictlyBelow"));

    let out = majorize(&["check", "1,2", "1,2"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "Equal"));

    let out = majorize(&["check", "3,1", "2,2"]);
    assert_eq!((code(&out), stdout(&out).trim()), (1, "RightStrictlyBelow"));

    let out = majorize(&["check", "5,0", "4,2"]);
    assert_eq!((code(&out), stdout(&out).trim()), (1, "Incomparable"));
}

#[test]
fn check_classical_and_json() {
    let out = majorize(&["check", "2,2", "1,3", "--mode", "classical"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "true"));
    let out = majorize(&["check", "1,3", "2,2", "--mode", "classical"]);
    assert_eq!((code(&out), stdout(&out).trim()), (1, "false"));

    let out = majorize(&["check", "4,4", "14,1", "--json"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["verdict"], "LeftStrictlyBelow");
    assert_eq!(value["holds"], true);
    assert_eq!(value["right"], serde_json::json!([14, 1]));
}

#[test]
fn malformed_operands_exit_two() {
    for args in [
        &["check", "1,2", "1"][..],
        &["check", "1,-2", "1,2"],
        &["check", "1,x", "1,2"],
        &["check", "@a", "1,2"],
        &["check", "1,2", "1,2", "--eps", "-1"],
    ] {
        let out = majorize(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn eps_flag_and_environment() {
    let near = ["check", "1.0000001,2", "1,2"];
    assert_eq!(code(&majorize(&near)), 1);

    let out = Command::new(env!("CARGO_BIN_EXE_majorize"))
        .args(near)
        .env("MAJORIZE_EPS", "1e-6")
        .output()
        .unwrap();
    assert_eq!((code(&out), stdout(&out).trim()), (0, "Equal"));

    let out = Command::new(env!("CARGO_BIN_EXE_majorize"))
        .args(near)
        .args(["--eps", "0"])
        .env("MAJORIZE_EPS", "1e-6")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1, "--eps overrides the environment");

    let out = Command::new(env!("CARGO_BIN_EXE_majorize"))
        .args(near)
        .env("MAJORIZE_EPS", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn decompose_decreasing_prints_chain() {
    let out = majorize(&[
        "decompose",
        "1,1,1,0,0,0",
        "3,3,3,2,1,1",
        "--mode",
        "decreasing",
    ]);
    assert_eq!(code(&out), 0);
    let first = stdout(&out).lines().next().unwrap().to_string();
    assert_eq!(
        first,
        "(1,1,1,0,0,0) ≺ (3,1,1,0,0,0) ≺ (3,3,1,0,0,0) ≺ (3,3,3,0,0,0) \
         ≺ (3,3,3,2,0,0) ≺ (3,3,3,2,1,0) ≺ (3,3,3,2,1,1)"
    );
}

#[test]
fn decompose_edge_cases() {
    let out = majorize(&["decompose", "5,5", "5,5"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "already equal"));

    let out = majorize(&["decompose", "3,2,1", "4,1,1", "--mode", "transfers"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("1 elementary impact increases"));

    let out = majorize(&["decompose", "3,1", "2,2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("prefix sum 1"));

    let out = majorize(&["decompose", "0,3,3", "2,2,2", "--mode", "decreasing"]);
    assert_eq!(code(&out), 1);

    let out = majorize(&["decompose", "1,1", "2,2", "--mode", "transfers"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn decompose_verify_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("cert.json");
    let out = majorize(&[
        "decompose",
        "1,5,2,0",
        "6,3,4,1",
        "--out",
        path_str(&cert_path),
    ]);
    assert_eq!(code(&out), 0);

    let out = majorize(&["verify", "--cert", path_str(&cert_path)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("ok:"));

    let out = majorize(&["verify", "--cert", path_str(&cert_path), "--json"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], true);

    // Change the first step's amount without touching the recorded states.
    let text = std::fs::read_to_string(&cert_path).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let amount = value["steps"][0]["a"].as_f64().unwrap();
    value["steps"][0]["a"] = serde_json::json!(amount + 1.0);
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, value.to_string()).unwrap();
    let out = majorize(&["verify", "--cert", path_str(&tampered), "--json"]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], false);
    assert_eq!(report["failure"]["step"], 1);

    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, "{\"mode\": \"general\", \"steps\": 3}").unwrap();
    assert_eq!(code(&majorize(&["verify", "--cert", path_str(&malformed)])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&majorize(&["verify", "--cert", path_str(&missing)])), 2);
}

#[test]
fn lorenz_curve_and_gini() {
    let out = majorize(&["lorenz", "1,1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("gini 0\n"));

    let out = majorize(&["lorenz", "3,1"]);
    let text = stdout(&out);
    assert!(text.contains("0.5,0.75\n"));
    assert!(text.ends_with("gini 0.25\n"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.json");
    let out = majorize(&["lorenz", "2,6", "--format", "json", "--out", path_str(&path)]);
    assert_eq!(stdout(&out), "gini 0.25\n");
    let curve: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(curve["points"][1], serde_json::json!([0.5, 0.75]));

    assert_eq!(code(&majorize(&["lorenz", "0,0"])), 1);
}

fn write_table(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn batch_matrix() {
    let dir = tempfile::tempdir().unwrap();

    let single = write_table(dir.path(), "one.csv", "solo,1,2,3\n");
    let out = majorize(&["batch", "--input", &single]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().nth(1).unwrap().trim_end(), "solo    =");

    let pair = write_table(
        dir.path(),
        "pair.csv",
        "id,2024,2023,2022,2021\nflat,4,4,4,4\nspike,14,1,1,1\n",
    );
    let report_path = dir.path().join("report.json");
    let out = majorize(&["batch", "--input", &pair, "--out", path_str(&report_path)]);
    assert_eq!(code(&out), 0);
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["flat", "=", "≺"]);
    assert_eq!(lines[2].split_whitespace().collect::<Vec<_>>(), ["spike", "≻", "="]);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["ids"], serde_json::json!(["flat", "spike"]));
    assert_eq!(report["outcomes"][0][1], "LeftStrictlyBelow");
    assert_eq!(report["period_labels"][0], "2024");

    let crossing = write_table(dir.path(), "cross.csv", "a,5,0\nb,4,2\n");
    let out = majorize(&["batch", "--input", &crossing]);
    assert!(stdout(&out).lines().nth(1).unwrap().contains('∥'));
}

#[test]
fn batch_rejects_bad_tables() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text, row) in [
        ("ragged.csv", "a,1,2\nb,1\n", "row 2"),
        ("negative.csv", "a,1,2\nb,1,-2\n", "row 2"),
        ("duplicate.csv", "a,1\nb,2\na,3\n", "row 3"),
    ] {
        let path = write_table(dir.path(), name, text);
        let out = majorize(&["batch", "--input", &path]);
        assert_eq!(code(&out), 2, "{name}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(row), "{name}");
    }
}

#[test]
fn table_operands() {
    let dir = tempfile::tempdir().unwrap();
    let table = write_table(dir.path(), "t.csv", "flat,4,4,4,4\nspike,14,1,1,1\n");
    let out = majorize(&["check", "@flat", "@spike", "--table", &table]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "LeftStrictlyBelow"));
    let out = majorize(&["check", "@flat", "@nobody", "--table", &table]);
    assert_eq!(code(&out), 2);
}

fn parse_pairs(text: &str) -> Vec<(Array, Array)> {
    let parse = |s: &str| {
        Array::new(s.split(',').map(|v| v.parse().unwrap()).collect()).unwrap()
    };
    text.lines()
        .map(|line| {
            let (x, y) = line.split_once(' ').unwrap();
            (parse(x), parse(y))
        })
        .collect()
}

#[test]
fn gen_is_deterministic_and_dominated() {
    let args = ["gen", "--seed", "11", "--n", "6", "--k", "8", "--count", "40"];
    let first = majorize(&args);
    let second = majorize(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let pairs = parse_pairs(&stdout(&first));
    assert_eq!(pairs.len(), 40);
    for (x, y) in &pairs {
        assert_eq!(x.len(), 6);
        assert!(generalized_compare(x, y, Tolerance::EXACT)
            .unwrap()
            .left_below_or_equal());
        let out = majorize(&["check", &inline(x), &inline(y), "--eps", "0"]);
        assert_eq!(code(&out), 0);
    }

    let out = majorize(&["gen", "--k", "0", "--count", "5"]);
    for (x, y) in parse_pairs(&stdout(&out)) {
        assert_eq!(x, y);
    }
}

#[test]
fn gen_floats_round_trip_through_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let out = majorize(&["gen", "--float", "--seed", "5", "--n", "5", "--k", "6", "--count", "10"]);
    for (idx, (x, y)) in parse_pairs(&stdout(&out)).into_iter().enumerate() {
        let path = dir.path().join(format!("c{idx}.json"));
        let out = majorize(&["decompose", &inline(&x), &inline(&y), "--out", path_str(&path)]);
        assert_eq!(code(&out), 0);
        let cert = Certificate::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(cert.source, x);
        assert_eq!(cert.target, y);
        assert!(verify_certificate(&cert, Tolerance::default()).ok);
    }
}

fn inline(a: &Array) -> String {
    a.values()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(code(&majorize(&["frobnicate"])), 2);
}
