use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-gcs")).args(args).output().expect("binary runs")
}

fn run_config(name: &str, extra: &[&str]) -> Output {
    let path = config(name);
    let mut args = vec!["--config", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn golden_suite_passes_with_many_checks() {
    let out = run_config("golden_n2.json", &["--format", "records"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(records.len() >= 10);
    for r in &records {
        assert!(r["check"].is_string() && r["anchor"].is_string() && r["verdict"].is_string());
    }
}

#[test]
fn suite_is_byte_identical_across_runs() {
    let a = run_config("golden_n2.json", &["--format", "records", "--seed", "11"]);
    let b = run_config("golden_n2.json", &["--format", "records", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn asymmetric_match_is_both_obstructed() {
    let out = run_config("asymmetric_a.json", &["--format", "records"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), r#"{"check":"match.object00","anchor":"mirror-duality","verdict":"BOTH_OBSTRUCTED"}"#);
}

#[test]
fn non_positive_definite_exits_two() {
    let out = run_config("non_pd.json", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotPositiveDefinite"));
}

#[test]
fn missing_config_exits_two() {
    let out = run(&["--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn float_flag_adds_crosschecks() {
    let out = run_config("golden_n2_integral_tau.json", &["--format", "records", "--float", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("float.gcs-axioms"));
    assert!(text.contains("\"verdict\":\"INTEGRAL\""));
}

#[test]
fn failing_check_exits_one() {
    let dir = std::env::temp_dir().join(format!("torus-gcs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("obstructed.json");
    let text = std::fs::read_to_string(config("asymmetric_a.json")).unwrap().replace("\"match\"", "\"check-object\"");
    std::fs::write(&path, text).unwrap();
    let out = run(&["--config", path.to_str().unwrap(), "--format", "records"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"check\":\"object00.symplectic.lagrangian\",\"anchor\":\"lagrangian-condition\",\"verdict\":\"FAIL\""));
    std::fs::remove_dir_all(&dir).unwrap();
}
