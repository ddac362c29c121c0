use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rolle(args: &[&str]) -> Output {
    rolle_in(Path::new("."), args)
}

fn rolle_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rolle"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is a JSON document")
}

/// The document without its timestamp.
fn diffable(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with("\"started_at\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn enumerate_small_degrees() {
    let o = rolle(&["enumerate", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "010210\n012010\ncount 2\nflat_count 2\nagree true\n"
    );

    let o = rolle(&["enumerate", "--n", "2"]);
    assert!(stdout(&o).starts_with("010\ncount 1\n"));
}

#[test]
fn enumerate_quintic_as_json() {
    let o = rolle(&["enumerate", "--n", "5", "--format", "json"]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["payload"]["words"].as_array().unwrap().len(), 286);
    assert_eq!(doc["payload"]["agree"], true);
    assert_eq!(doc["manifest"]["subcommand"], "enumerate");
    assert_eq!(doc["manifest"]["parameters"]["n"], 5);
}

#[test]
fn enumerate_guard_is_invalid_input() {
    let o = rolle(&["enumerate", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degree"));
}

#[test]
fn count_and_verify() {
    let o = rolle(&["count", "--n", "7"]);
    assert_eq!(stdout(&o), "flat_count 23178480\n");
    let o = rolle(&["count", "--n", "5", "--verify"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("enumerated 286\nagree true"));
    let o = rolle(&["count", "--n", "12", "--format", "json"]);
    assert!(json(&o)["payload"]["flat_count"].as_str().unwrap().len() > 20);
}

#[test]
fn classify_cubic() {
    let o = rolle(&[
        "classify",
        "--n",
        "3",
        "--samples",
        "1000",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["payload"]["distinct"], 2);
    let counts = doc["payload"]["result"]["counts"].as_object().unwrap();
    assert!(counts.contains_key("010210") && counts.contains_key("012010"));
}

#[test]
fn classify_quartic_finds_ten() {
    let o = rolle(&[
        "classify",
        "--n",
        "4",
        "--samples",
        "100000",
        "--seed",
        "42",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc = json(&o);
    assert_eq!(doc["payload"]["distinct"], 10);
    let counts = doc["payload"]["result"]["counts"].as_object().unwrap();
    assert!(!counts.contains_key("0102310210"));
    assert!(!counts.contains_key("0120132010"));
}

#[test]
fn classify_files_are_identical_across_worker_counts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "classify",
        "--n",
        "4",
        "--samples",
        "20000",
        "--seed",
        "9",
        "--out",
        "result.json",
    ];
    let one = rolle_in(a.path(), &[&args[..], &["--workers", "1"]].concat());
    let four = rolle_in(b.path(), &[&args[..], &["--workers", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    let fa = std::fs::read_to_string(a.path().join("result.json")).unwrap();
    let fb = std::fs::read_to_string(b.path().join("result.json")).unwrap();
    assert!(fa.contains("\"started_at\""));
    assert_eq!(diffable(&fa), diffable(&fb));
    assert_eq!(stdout(&one), stdout(&four));
    assert!(!fa.contains("workers"));
}

#[test]
fn classify_requires_a_seed() {
    let o = rolle(&["classify", "--n", "3", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_rejects_unknown_scheme() {
    let o = rolle(&[
        "classify",
        "--n",
        "3",
        "--samples",
        "10",
        "--seed",
        "1",
        "--scheme",
        "sobol",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check3_worked_cubic_passes() {
    let o = rolle(&["check3", "0", "1", "4", "0.464816", "2.868517", "1.666667"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in 1..=4 {
        assert!(out.contains(&format!("line {line}: pass")), "{out}");
    }
    assert!(out.contains("line 3: pass (0.464816 < 0.535184)"));
    assert!(out.contains("case x2<z1"));
    assert!(out.contains("admissible true"));
}

#[test]
fn check3_reports_line_three() {
    let o = rolle(&["check3", "0", "1", "4", "0.6", "2.87", "1.6667"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("line 3: FAIL"));
    assert!(out.contains("line 4: pass"));
    assert!(out.contains("admissible false"));
}

#[test]
fn check3_needs_six_values() {
    let o = rolle(&["check3", "0", "1", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct3_round_trip_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let s = 13f64.sqrt();
    let tuple: Vec<String> = [0.0, 1.0, 4.0, (5.0 - s) / 3.0, (5.0 + s) / 3.0, 5.0 / 3.0]
        .iter()
        .map(|x| x.to_string())
        .collect();
    let mut args = vec!["construct3"];
    args.extend(tuple.iter().map(String::as_str));
    args.extend([
        "--spline-out",
        "spline.json",
        "--curve-out",
        "curve.csv",
        "--samples",
        "50",
        "--format",
        "json",
    ]);
    let o = rolle_in(dir.path(), &args);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc = json(&o);
    assert!(doc["payload"]["max_relative_deviation"].as_f64().unwrap() <= 1e-6);

    let spline: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("spline.json")).unwrap())
            .unwrap();
    assert_eq!(spline["manifest"]["subcommand"], "construct3");
    let knots = spline["payload"]["knots"].as_array().unwrap();
    let pieces = spline["payload"]["pieces"].as_array().unwrap();
    assert_eq!(knots.len(), pieces.len() + 1);

    let curve = std::fs::read_to_string(dir.path().join("curve.csv")).unwrap();
    let lines: Vec<&str> = curve.lines().collect();
    assert_eq!(lines[0], "x,f,df,d2f");
    assert_eq!(lines.len(), 51);
}

#[test]
fn construct3_symmetric_tuple_gives_symmetric_curve() {
    let dir = tempfile::tempdir().unwrap();
    let o = rolle_in(
        dir.path(),
        &[
            "construct3",
            "-1",
            "0",
            "1",
            "-0.6",
            "0.6",
            "0",
            "--curve-out",
            "curve.csv",
            "--samples",
            "41",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let rows: Vec<Vec<f64>> = std::fs::read_to_string(dir.path().join("curve.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    let m = rows.len();
    for i in 0..m {
        let (a, b) = (&rows[i], &rows[m - 1 - i]);
        assert!((a[0] + b[0]).abs() < 1e-12);
        // f odd, f' even, f'' odd
        assert!((a[1] + b[1]).abs() < 1e-9, "{a:?} {b:?}");
        assert!((a[2] - b[2]).abs() < 1e-9);
        assert!((a[3] + b[3]).abs() < 1e-9);
    }
}

#[test]
fn construct3_rejects_violating_tuple() {
    let o = rolle(&["construct3", "0", "1", "4", "0.6", "2.87", "1.6667"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3 violated"), "{}", stderr(&o));
}

#[test]
fn anderson_grid_and_random() {
    let o = rolle(&["anderson", "--grid", "200"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("points 40000"));
    assert!(out.contains("counterexamples 0"));

    let o = rolle(&[
        "anderson", "--random", "100000", "--seed", "7", "--format", "json",
    ]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["payload"]["report"]["counterexamples"], 0);
    assert!(
        doc["payload"]["report"]["hypotheses_hold"]
            .as_u64()
            .unwrap()
            > 0
    );
}

#[test]
fn anderson_usage_errors() {
    assert_eq!(rolle(&["anderson", "--grid", "1"]).status.code(), Some(2));
    assert_eq!(
        rolle(&["anderson", "--random", "10"]).status.code(),
        Some(2)
    );
    assert_eq!(rolle(&["anderson"]).status.code(), Some(2));
}

#[test]
fn trig_degree_one_alternates() {
    let o = rolle(&[
        "trig",
        "--n",
        "1",
        "--k",
        "2",
        "--samples",
        "100",
        "--seed",
        "0",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("0101 100\n"));
}

#[test]
fn trig_observed_words_are_possible() {
    let o = rolle(&[
        "trig",
        "--n",
        "2",
        "--k",
        "2",
        "--samples",
        "10000",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["payload"]["all_in_universe"], true);

    let o = rolle(&[
        "trig",
        "--n",
        "3",
        "--k",
        "3",
        "--samples",
        "300",
        "--seed",
        "5",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["payload"]["all_in_universe"], true);
    assert!(doc["payload"]["observed"].as_object().unwrap().len() > 1);
}

#[test]
fn trig_guards() {
    assert_eq!(
        rolle(&[
            "trig",
            "--n",
            "4",
            "--k",
            "2",
            "--samples",
            "1",
            "--seed",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        rolle(&[
            "trig",
            "--n",
            "1",
            "--k",
            "4",
            "--samples",
            "1",
            "--seed",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
}
