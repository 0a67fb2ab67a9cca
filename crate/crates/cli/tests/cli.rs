use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn contextq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contextq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = contextq(args);
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{args:?}: invalid JSON ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().expect("exit code"), json)
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn schmidt_of_singlet() {
    let (code, r) = report(&["schmidt", "--state", "singlet"]);
    assert_eq!(code, 0);
    let coeffs = r["results"]["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 2);
    for c in coeffs {
        assert!((f(c) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-11);
    }
    assert_eq!(r["results"]["rank"], 2);
    assert_eq!(r["subcommand"], "schmidt");
    assert_eq!(r["duration_ms"], Value::Null);
}

#[test]
fn luders_of_plus_on_sigma_z() {
    let (code, r) = report(&["luders", "--state", "plus", "--observable", "sigma_z"]);
    assert_eq!(code, 0);
    let w = &r["results"]["w_a"];
    let re: Vec<f64> = w["re"].as_array().unwrap().iter().map(f).collect();
    let im: Vec<f64> = w["im"].as_array().unwrap().iter().map(f).collect();
    for (k, expected) in [0.5, 0.0, 0.0, 0.5].into_iter().enumerate() {
        assert!((re[k] - expected).abs() < 1e-12);
        assert!(im[k].abs() < 1e-12);
    }
    assert!(f(&r["results"]["delta"]) < 1e-9);
}

#[test]
fn ks_square_finds_no_assignment() {
    let (code, r) = report(&["ks-square"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["assignments_searched"], 512);
    assert_eq!(r["results"]["satisfying"], 0);
    assert!(r["results"]["relaxed_satisfying"].as_u64().unwrap() >= 1);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        &["mub-tomography", "--shots", "1000", "--seed", "11"][..],
        &["correlate", "--sweep", "0:180:30"][..],
        &["evolve"][..],
        &["ghz"][..],
    ] {
        let a = contextq(args);
        let b = contextq(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_is_recorded_and_changes_samples() {
    let (_, a) = report(&["mub-tomography", "--shots", "500", "--seed", "1"]);
    let (_, b) = report(&["mub-tomography", "--shots", "500", "--seed", "2"]);
    assert_eq!(a["seed"], 1);
    assert_eq!(b["seed"], 2);
    assert_ne!(a["results"]["tables"], b["results"]["tables"]);
}

#[test]
fn usage_and_input_errors_exit_two_with_one_line() {
    for args in [
        &["no-such-command"][..],
        &["schmidt", "--state", "bogus"][..],
        &["schmidt", "--state", "missing/file.json"][..],
        &["luders", "--state", "singlet", "--observable", "sigma_z"][..],
        &["representative", "--state", "mixed:2"][..],
        &["schmidt", "--state", "ghz"][..],
        &["remote-state", "--outcome", "0"][..],
        &["chsh", "--a", "1,2"][..],
    ] {
        let out = contextq(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn failing_check_exits_one() {
    let (code, r) = report(&[
        "mub-tomography",
        "--shots",
        "100",
        "--seed",
        "3",
        "--max-distance",
        "1e-6",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["checks"][0]["pass"], false);
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();

    let s = std::f64::consts::FRAC_1_SQRT_2;
    fs::write(
        path("bell.json"),
        format!(r#"{{"dim": 4, "re": [{s}, 0, 0, {s}], "im": [0, 0, 0, 0]}}"#),
    )
    .unwrap();
    let (code, r) = report(&["schmidt", "--state", &path("bell.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["rank"], 2);

    fs::write(
        path("obs.json"),
        r#"{"dim": 2, "re": [0, 1, 1, 0], "im": [0, 0, 0, 0], "label": "X"}"#,
    )
    .unwrap();
    let (code, r) = report(&[
        "context-distance",
        "--observable",
        &path("obs.json"),
        "--other",
        "sigma_x",
    ]);
    assert_eq!(code, 0);
    assert!(f(&r["results"]["distance"]).abs() < 1e-12);

    let (code, _) = report(&[
        "mub-tomography",
        "--state",
        "minus",
        "--shots",
        "20000",
        "--seed",
        "5",
        "--stats-out",
        &path("stats.json"),
        "--out",
        &path("report.json"),
    ]);
    assert_eq!(code, 0);
    let stats: Value =
        serde_json::from_str(&fs::read_to_string(path("stats.json")).unwrap()).unwrap();
    assert_eq!(stats["samples"], 20000);
    assert_eq!(stats["seed"], 5);
    let (code, r) = report(&["mub-tomography", "--stats", &path("stats.json")]);
    assert_eq!(code, 0);
    let x = f(&r["results"]["reconstructed"]["re"][1]);
    assert!((x + 0.5).abs() < 0.05, "off-diagonal {x}");
    let saved: Value =
        serde_json::from_str(&fs::read_to_string(path("report.json")).unwrap()).unwrap();
    assert_eq!(saved["subcommand"], "mub-tomography");
}

#[test]
fn user_problem_file_is_searched() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("problem.json");
    // Z1, Z2, Z1Z2 with the consistent sign +1
    fs::write(
        &file,
        r#"{"observables": [
              {"dim": 4, "re": [1,0,0,0, 0,1,0,0, 0,0,-1,0, 0,0,0,-1], "im": [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]},
              {"dim": 4, "re": [1,0,0,0, 0,-1,0,0, 0,0,1,0, 0,0,0,-1], "im": [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]},
              {"dim": 4, "re": [1,0,0,0, 0,-1,0,0, 0,0,-1,0, 0,0,0,1], "im": [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]}],
            "labels": ["ZI", "IZ", "ZZ"], "contexts": [[0, 1, 2]], "signs": [1]}"#,
    )
    .unwrap();
    let p = file.to_string_lossy().into_owned();
    let (code, r) = report(&["ks-search", "--problem", &p]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["assignments_searched"], 8);
    assert_eq!(r["results"]["satisfying"], 4);

    let flipped = fs::read_to_string(&file)
        .unwrap()
        .replace(r#""signs": [1]"#, r#""signs": [-1]"#);
    fs::write(&file, flipped).unwrap();
    let out = contextq(&["ks-search", "--problem", &p]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn correlation_csv_has_expected_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("table.csv").to_string_lossy().into_owned();
    let (code, _) = report(&["correlate", "--csv", &csv_path, "--sweep", "0:180:90"]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta_degrees,E,p_pp,p_pm,p_mp,p_mm");
    assert_eq!(lines.len(), 4);
    let first: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert!((first[1] + 1.0).abs() < 1e-12);
}

#[test]
fn timing_flag_fills_duration() {
    let (_, r) = report(&["ghz", "--timing"]);
    assert!(r["duration_ms"].as_f64().is_some());
}

#[test]
fn suite_passes() {
    let (code, r) = report(&["suite"]);
    assert_eq!(
        code,
        0,
        "{}",
        serde_json::to_string_pretty(&r["results"]).unwrap()
    );
    let criteria = r["results"]["criteria"].as_object().unwrap();
    assert_eq!(criteria.len(), 12);
    assert!(criteria.values().all(|v| v == true));
}
