use std::process::{Command, Output};

fn graphc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphc"))
        .args(args)
        .env_remove("GRAPHC_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn odd_degree_one_column_is_zero() {
    let o = graphc(&["table", "--type", "odd", "-k", "1..3", "-m", "1..1", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.ends_with(",0")), "{text}");
}

#[test]
fn even_generator_is_reported_with_support() {
    let o = graphc(&["cohomology", "--type", "even", "-k", "3", "-m", "1", "--representative", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["dim"], 1);
    assert_eq!(v[0]["support_representative"]["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v[0]["ratio"], "-2");
}

#[test]
fn d2_check_passes() {
    let o = graphc(&["check", "d2", "--type", "both", "--kmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("0 failed\n"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(graphc(&["table", "-k", "3..1"]).status.code(), Some(2));
    assert_eq!(graphc(&["check", "nonsense"]).status.code(), Some(2));
    assert_eq!(graphc(&["cache", "verify"]).status.code(), Some(2));
    assert_eq!(graphc(&["export", "json", "--type", "odd", "-k", "1", "-m", "0", "--index", "9"]).status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_three() {
    let o = graphc(&["table", "--type", "odd", "-k", "3", "-m", "0", "--max-cell-size", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn corrupt_cache_exits_five() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(graphc(&["--cache-dir", d, "cache", "build", "--type", "odd", "-k", "2"]).status.success());
    assert_eq!(graphc(&["--cache-dir", d, "cache", "verify"]).status.code(), Some(0));
    let path = dir.path().join("basis_odd_k2_m0.jsonl");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("[1,", "[2,", 1)).unwrap();
    assert_eq!(graphc(&["--cache-dir", d, "cache", "verify"]).status.code(), Some(5));
    assert_eq!(graphc(&["--cache-dir", d, "table", "--type", "odd", "-k", "2"]).status.code(), Some(5));
    assert!(graphc(&["--cache-dir", d, "cache", "clear"]).status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn environment_cache_dir_is_used_and_flag_wins() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let run = |with_flag: bool| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_graphc"));
        c.env("GRAPHC_CACHE_DIR", env_dir.path());
        if with_flag {
            c.arg("--cache-dir").arg(flag_dir.path());
        }
        c.args(["table", "--type", "even", "-k", "2", "-m", "0"]).output().unwrap()
    };
    assert!(run(false).status.success());
    assert!(env_dir.path().join("basis_even_k2_m0.jsonl").exists());
    assert!(run(true).status.success());
    assert!(flag_dir.path().join("basis_even_k2_m0.jsonl").exists());
}

#[test]
fn export_formats() {
    let o = graphc(&["export", "dot", "--diagram", r#"{"type":"even","ve":5,"vi":0,"edges":[[1,3],[1,4],[2,5]],"loop_orders":[]}"#]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph diagram {"));
    assert_eq!(dot.matches("style=dashed").count(), 3);
    let o = graphc(&["export", "json", "--type", "odd", "-k", "2", "-m", "0", "--index", "0"]);
    let line = stdout(&o);
    let d = graphc::Diagram::from_json(line.trim()).unwrap();
    assert_eq!(d.grading(), (2, 0));
}

#[test]
fn matrix_export_matches_rank() {
    let o = graphc(&["matrix", "--type", "odd", "-k", "3", "-m", "0"]);
    let text = stdout(&o);
    assert!(text.contains("basis_odd_k3_m1.jsonl sha256="));
    let entries = text.lines().filter(|l| !l.starts_with('#')).count();
    let gc = graphc::linalg::GraphComplex::new();
    assert_eq!(entries, gc.matrix_of_delta(graphc::ComplexType::Odd, 3, 0).unwrap().nnz());
}

#[test]
fn table_is_deterministic() {
    let a = graphc(&["table", "--type", "both", "-k", "1..3"]);
    let b = graphc(&["table", "--type", "both", "-k", "1..3"]);
    assert_eq!(a.stdout, b.stdout);
}
