use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jordanian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spin_half_matrix_is_generators() {
    let o = run(&["dmatrix", "--twoj", "1", "--ring", "sl", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x | u\nv | y\n");
}

#[test]
fn determinant_normalizes_to_one() {
    let o = run(&["normalform", "x*y - u*v - h*x*v", "--ring", "sl"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    let gl = run(&["normalform", "x*v", "--ring", "gl"]);
    assert_eq!(stdout(&gl).trim(), "v*x - h*v^2");
}

#[test]
fn rtt_suite_reports_success() {
    let o = run(&["verify", "--suite", "rtt", "--max-twoj", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["suite"], "rtt");
    assert_eq!(report["failed"], 0);
    assert!(report["passed"].as_u64().unwrap() > 100);
}

#[test]
fn cgc_and_twist_tables() {
    let o = run(&["cgc", "--twoj1", "1", "--twoj2", "1", "--twoj3", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["omega"].as_array().unwrap().len(), 3);
    let r = run(&["rmatrix", "--twoj1", "1", "--twoj2", "1"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&r)).unwrap();
    assert_eq!(doc["basis"].as_array().unwrap().len(), 4);
    assert_eq!(doc["matrix"].as_array().unwrap().len(), 4);
    let f = run(&["fmatrix", "--twoj1", "2", "--twoj2", "1"]);
    assert_eq!(f.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["dmatrix"]).status.code(), Some(2));
    assert_eq!(run(&["normalform", "x*("]).status.code(), Some(2));
    let bad = run(&["cgc", "--twoj1", "1", "--twoj2", "1", "--twoj3", "5"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("triangle"));
    let gl_jacobi = run(&["dmatrix", "--twoj", "2", "--scheme", "jacobi", "--ring", "gl"]);
    assert_eq!(gl_jacobi.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["dmatrix", "--twoj", "3", "--ring", "gl", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let v = ["verify", "--suite", "pbw", "--max-twoj", "2"];
    assert_eq!(run(&v).stdout, run(&v).stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("jordanian-cli-{}.tex", std::process::id()));
    let o = run(&["dmatrix", "--twoj", "1", "--format", "latex", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with("\\begin{array}{cc}"));
}
