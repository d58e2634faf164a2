use std::io::Write;
use std::process::{Command, Output};

fn gvpairs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gvpairs")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_text() -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/golden.json")).unwrap()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn series_n2_has_72_at_q2() {
    let o = gvpairs(&["series", "n2", "--trunc", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == r#"{"exp":2,"series":"n2","value":"72"}"#));
}

#[test]
fn eta_prefix() {
    let o = gvpairs(&["series", "eta", "--k", "-24", "--format", "csv", "--trunc", "9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(&lines[..4], &["series,exp,value", "eta,0,1", "eta,1,24", "eta,2,324"]);
}

#[test]
fn unknown_series_is_usage_error() {
    assert_eq!(gvpairs(&["series", "n7"]).status.code(), Some(2));
}

#[test]
fn truncation_is_validated() {
    let o = gvpairs(&["gv", "--trunc", "8", "--d-max", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trunc"));
}

#[test]
fn check_passes_on_k3xk3() {
    let o = gvpairs(&["check", "--geometry", "k3xk3", "--d-max", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 28);
}

#[test]
fn corrupted_series_golden_fails() {
    let f = temp_file(&golden_text().replacen("\"1920\"", "\"1921\"", 1));
    let o = gvpairs(&["check", "--golden", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("d=3"));
}

#[test]
fn corrupted_tp2_golden_fails() {
    let text = golden_text().replacen(r#""n": 1, "d": 2, "insertion": "H^2,H^2", "value": "-1""#, r#""n": 1, "d": 2, "insertion": "H^2,H^2", "value": "1""#, 1);
    assert_ne!(text, golden_text());
    let f = temp_file(&text);
    let o = gvpairs(&["check", "--geometry", "tp2", "--golden", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_golden_is_usage_error() {
    let f = temp_file("{ not json");
    assert_eq!(gvpairs(&["check", "--golden", f.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn flipped_orientation_fails_check() {
    assert_eq!(gvpairs(&["check", "--orientation", "-"]).status.code(), Some(1));
}

#[test]
fn mukai_verify_d50() {
    let o = gvpairs(&["mukai", "verify", "--d", "50"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "isometry: true");
}

#[test]
fn mukai_apply_sends_sheaf_class_to_ideal_class() {
    let o = gvpairs(&["mukai", "apply", "--d", "4", "--n", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["image"]["r"], "1");
    assert_eq!(v["image"]["s"], "-3");
    let bad = gvpairs(&["mukai", "apply", "--d", "4", "--vector", "1,2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn taut_replays() {
    let o = gvpairs(&["taut", "--genus", "2", "--d", "3", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().nth(1), Some("2,3,-80,1920"));
    let o = gvpairs(&["taut", "--genus", "1", "--d", "2", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("1,2,30,30"));
    assert_eq!(gvpairs(&["taut", "--d", "1"]).status.code(), Some(2));
}

#[test]
fn fock_dump() {
    let o = gvpairs(&["fock", "--weight-max", "3"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1]["top_scalar"], "-1/2");
    assert_eq!(lines[2]["dimension"], "3200");
}

#[test]
fn config_file_is_used_and_flags_override() {
    let cfg = temp_file(
        r#"{
            "trunc": 12,
            "d_max": 3,
            "insertions": {
                "gamma1": {"a1": "0", "a2": "2", "mixed": [], "t_gram": [["0", "1"], ["1", "0"]]},
                "gamma2": {"a1": "0", "a2": "0", "mixed": [], "t_gram": [["0", "1"], ["1", "0"]]}
            }
        }"#,
    );
    let path = cfg.path().to_str().unwrap();
    let o = gvpairs(&["gv", "--geometry", "k3xk3", "--format", "csv", "--config", path]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 3 * 3);
    // n_1 at d = 2 is 24 * a2 * N_1(1) = 1440
    assert!(text.lines().any(|l| l == "K3xK3,g=1,2,1440"));
    let o = gvpairs(&["gv", "--config", path, "--d-max", "2"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("K3xK3")).count(), 6);
}

#[test]
fn bad_config_is_usage_error() {
    let cfg = temp_file(r#"{"trunc": 12, "colour": "blue"}"#);
    assert_eq!(gvpairs(&["gv", "--config", cfg.path().to_str().unwrap()]).status.code(), Some(2));
    let cfg = temp_file(r#"{"insertions": {"gamma1": {"a1": "0.5", "a2": "0", "t_gram": [["0"]]}, "gamma2": {"a1": "0", "a2": "0", "t_gram": [["0"]]}}}"#);
    assert_eq!(gvpairs(&["gv", "--config", cfg.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = gvpairs(&["pairs", "--d-max", "5", "--trunc", "8"]);
    let b = gvpairs(&["pairs", "--d-max", "5", "--trunc", "8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
