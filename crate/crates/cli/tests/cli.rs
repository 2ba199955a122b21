use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sasaki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sasaki")).args(args).output().expect("run sasaki")
}

/// Runs with `--out` and returns (exit code, stdout summary, file contents).
fn run_to_file(args: &[&str], dir: &Path, file: &str) -> (i32, Value, String) {
    let path = dir.join(file);
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", path.to_str().unwrap()]);
    let out = sasaki(&all);
    let summary = serde_json::from_slice(&out.stdout).expect("summary is JSON");
    (out.status.code().unwrap(), summary, std::fs::read_to_string(&path).unwrap())
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn base_geodesic_straight_line() {
    let dir = tempfile::tempdir().unwrap();
    let (code, summary, csv) = run_to_file(&["base-geodesic", "--u", "1", "--t-max", "2"], dir.path(), "line.csv");
    assert_eq!(code, 0);
    assert!(summary["max_gap"].as_f64().unwrap() < 1e-12);
    let (header, rows) = parse_csv(&csv);
    assert_eq!(header[..4], ["t", "x1", "x2", "x3"]);
    for r in &rows {
        assert!((r[1] - r[0]).abs() < 1e-12 && r[2] == 0.0 && r[3] == 0.0);
    }
}

#[test]
fn base_geodesic_reference_case() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["base-geodesic", "--u", "1", "--v", "2", "--w", "0.5"];
    let (code, summary, _) = run_to_file(&args, dir.path(), "g.csv");
    assert_eq!(code, 0);
    assert!(summary["max_gap"].as_f64().unwrap() < 1e-6);
    for r in summary["closed_form_residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn zero_initial_data_stays_at_origin() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, csv) = run_to_file(&["bundle-geodesic", "--t-max", "1"], dir.path(), "z.csv");
    assert_eq!(code, 0);
    let (_, rows) = parse_csv(&csv);
    assert_eq!(rows.len(), 1001);
    assert!(rows.iter().all(|r| r[1..].iter().all(|&x| x == 0.0)));
}

#[test]
fn fiber_geodesic_is_linear_in_fiber() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["bundle-geodesic", "--l", "1", "--m", "2", "--n", "3", "--t-max", "1"];
    let (code, summary, csv) = run_to_file(&args, dir.path(), "f.csv");
    assert_eq!(code, 0);
    assert_eq!(summary["verdict"], "pass");
    let (header, rows) = parse_csv(&csv);
    assert_eq!(header.join(","), "t,x1,x2,x3,y1,y2,y3,v1,v2,v3,yp1,yp2,yp3");
    for r in &rows {
        let t = r[0];
        assert!(r[1..4].iter().all(|&x| x == 0.0));
        assert!((r[4] - t).abs() < 1e-10 && (r[5] - 2.0 * t).abs() < 1e-10 && (r[6] - 3.0 * t).abs() < 1e-10);
    }
}

// The polynomial candidate (ut, vt, 0, lt, 0, -u l t^2) is not a geodesic;
// the integrator must move away from it.
#[test]
fn special_data_leaves_polynomial_curve() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["bundle-geodesic", "--u", "1", "--v", "2", "--l", "3", "--t-max", "2"];
    let (code, summary, csv) = run_to_file(&args, dir.path(), "s.csv");
    assert_eq!(code, 0, "energy is still conserved");
    assert!(summary["lagrangian_drift"].as_f64().unwrap() < 1e-6);
    let (_, rows) = parse_csv(&csv);
    let gap = rows
        .iter()
        .map(|r| {
            let t = r[0];
            let poly = [t, 2.0 * t, 0.0, 3.0 * t, 0.0, -3.0 * t * t];
            r[1..7].iter().zip(poly).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    assert!(gap > 1e-1, "gap {gap}");
}

#[test]
fn natural_lift_reference_case() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["lift", "--kind", "natural", "--u", "1", "--v", "2", "--w", "0.5"];
    let (code, summary, csv) = run_to_file(&args, dir.path(), "n.csv");
    assert_eq!(code, 0);
    assert_eq!(summary["geodesic"], true);
    for r in summary["el_residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-6);
    }
    // natural lift: y tracks the velocity
    let (_, rows) = parse_csv(&csv);
    for r in rows.iter().step_by(500) {
        assert!((r[4] - r[7]).abs() < 1e-12 && (r[5] - r[8]).abs() < 1e-12 && (r[6] - r[9]).abs() < 1e-12);
    }
}

#[test]
fn horizontal_lift_reference_case() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["lift", "--kind", "horizontal", "--u", "1", "--v", "2", "--w", "0.5", "--l", "1", "--m", "-1", "--n", "0.5"];
    let (code, summary, _) = run_to_file(&args, dir.path(), "h.csv");
    assert_eq!(code, 0);
    assert_eq!(summary["verdict"], "pass");
}

#[test]
fn check_verdicts_and_exit_codes() {
    let cases = [
        ("htm", 0, "pass", "pass"),
        ("vtm", 0, "pass", "pass"),
        ("ker-omega-h", 1, "fail", "not_applicable"),
        ("ker-omega-v", 1, "fail", "not_applicable"),
        ("f-h", 1, "pass", "fail"),
        ("f-v", 1, "pass", "fail"),
    ];
    for (name, code, tg, iso) in cases {
        let out = sasaki(&["check", "--name", name]);
        assert_eq!(out.status.code(), Some(code), "{name}");
        let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(summary["totally_geodesic"], tg, "{name}");
        assert_eq!(summary["isocline"], iso, "{name}");
        let data: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(data["seed"], 1958);
        assert_eq!(data["samples"], 102);
    }
}

#[test]
fn check_csv_layout() {
    let out = sasaki(&["check", "--name", "ker-omega-v", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "name,criterion,tolerance,global_max,verdict,witness_x1,witness_x2,witness_x3,witness_y1,witness_y2,witness_y3,witness_residual"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[..2], ["ker-omega-v", "totally_geodesic"]);
    assert_eq!(row[4], "fail");
    assert_eq!(row[11].parse::<f64>().unwrap().abs(), 1.0);
}

#[test]
fn check_json_schema() {
    let out = sasaki(&["check", "--name", "htm"]);
    let data: Value = serde_json::from_slice(&out.stdout).unwrap();
    for c in data["checks"].as_array().unwrap() {
        for key in ["name", "criterion", "tolerance", "global_max", "verdict", "witness"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
        assert!(c["witness"]["point"].is_object() || c["witness"]["point"].is_array());
    }
}

#[test]
fn csv_round_trips_json_values() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["bundle-geodesic", "--u", "0.3", "--v", "-0.7", "--w", "0.2", "--l", "0.1", "--t-max", "0.5"];
    let (_, _, csv) = run_to_file(&args, dir.path(), "a.csv");
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let (_, _, json) = run_to_file(&json_args, dir.path(), "a.json");
    let (_, rows) = parse_csv(&csv);
    let json: Value = serde_json::from_str(&json).unwrap();
    let samples = json["samples"].as_array().unwrap();
    assert_eq!(samples.len(), rows.len());
    for (s, r) in samples.iter().zip(&rows) {
        assert_eq!(s["t"].as_f64().unwrap(), r[0]);
        let field = |k: &str, names: [&str; 3]| names.map(|n| s[k][n].as_f64().unwrap());
        let c = ["c1", "c2", "c3"];
        assert_eq!(field("x", ["x1", "x2", "x3"]), r[1..4]);
        assert_eq!(field("y", c), r[4..7]);
        assert_eq!(field("v", c), r[7..10]);
        assert_eq!(field("yp", c), r[10..13]);
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["bundle-geodesic", "--u", "1", "--v", "-2", "--w", "0.4", "--l", "0.3", "--m", "1", "--t-max", "2"];
    let (_, _, a) = run_to_file(&args, dir.path(), "a.csv");
    let (_, _, b) = run_to_file(&args, dir.path(), "b.csv");
    assert_eq!(a, b);
    let c1 = sasaki(&["check", "--name", "f-v", "--seed", "7"]).stdout;
    let c2 = sasaki(&["check", "--name", "f-v", "--seed", "7"]).stdout;
    assert_eq!(c1, c2);
}

#[test]
fn usage_and_input_errors_exit_2() {
    for args in [
        vec!["check", "--name", "no-such-distribution"],
        vec!["verify"],
        vec!["lift", "--u", "1"],
        vec!["base-geodesic", "--format", "xml"],
        vec!["base-geodesic", "--step", "-1"],
        vec!["base-geodesic", "--out", "/nonexistent-dir/x.csv"],
    ] {
        assert_eq!(sasaki(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_report_schema() {
    let out = sasaki(&["verify", "--all"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["passed", "summary", "failures", "checks"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    for key in ["prop3", "prop4", "prop5", "thm-lifts", "thm-fiber", "thm-special"] {
        let v = report["summary"][key].as_str().unwrap();
        assert!(v == "pass" || v == "fail");
    }
    let passed = report["passed"].as_bool().unwrap();
    assert_eq!(out.status.code(), Some(if passed { 0 } else { 1 }));
}

#[test]
fn verify_catches_curvature_sign_flip() {
    let out = sasaki(&["verify", "--all", "--inject-curvature-flip"]);
    assert_ne!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failures: Vec<&str> = report["failures"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
    assert!(failures.contains(&"curvature-bianchi"), "{failures:?}");
    assert!(failures.contains(&"curvature-constants"), "{failures:?}");
}
