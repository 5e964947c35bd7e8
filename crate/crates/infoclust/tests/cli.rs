use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use infoclust::report::Report;
use infoclust::validate::ValidationReport;
use tempfile::TempDir;

const MOTIVATING: &str =
    r#"{"kind":"bits","universe":["a","b","c","d"],"vars":[["a","d"],["a","d"],["a"],["b"],["b"],["c"]]}"#;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn infoclust(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infoclust"))
        .args(args)
        .env_remove("INFOCLUST_TOL")
        .output()
        .unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn clusters_the_motivating_example() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "m.json", MOTIVATING);
    let out = infoclust(&["cluster", arg(&input)]);
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.critical_values, vec![0.0, 1.0, 2.0]);
    assert_eq!(
        report.partitions[1],
        vec![vec![1, 2, 3], vec![4, 5], vec![6]]
    );
    assert_eq!(report.min_norm_calls, 11);
    assert!(report.complete && !report.differential_entropy && report.error.is_none());
    assert_eq!(report.levels[2].bases[0], vec![-2.0, -1.0, -0.5, -0.5, 0.0]);
}

#[test]
fn json_report_round_trips_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    let cov = r#"{"kind":"gaussian","cov":[[2,0.5,0.3,0.1],[0.5,1,0.2,0],[0.3,0.2,1.5,0.7],[0.1,0,0.7,1]]}"#;
    for (name, body) in [("m.json", MOTIVATING), ("g.json", cov)] {
        let input = write(&dir, name, body);
        let first = stdout(&infoclust(&["cluster", arg(&input)]));
        let again = Report::from_json(&first).unwrap().to_json();
        assert_eq!(first, again);
    }
}

#[test]
fn dot_output_is_a_tree() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "m.json", MOTIVATING);
    let dot = stdout(&infoclust(&["cluster", arg(&input), "--format", "dot"]));
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert_eq!(nodes, 10);
    assert_eq!(edges, nodes - 1);
    assert!(dot.contains("[label=\"C{1,2}@2\"]"));
    assert!(dot.contains("[label=\"C{1,2,3,4,5,6}@0\"]"));
}

#[test]
fn text_output_lists_thresholds() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "m.json", MOTIVATING);
    let text = stdout(&infoclust(&["cluster", arg(&input), "--format", "text"]));
    assert!(text.contains("0 ≤ γ < 1"));
    assert!(text.contains("{1,2,3} {4,5}"));
}

#[test]
fn two_copies_of_a_bit_share_one_bit() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "two.json", r#"{"kind":"bits","universe":["x"],"vars":[["x"],["x"]]}"#);
    let report = Report::from_json(&stdout(&infoclust(&["cluster", arg(&input)]))).unwrap();
    assert_eq!(report.critical_values, vec![1.0]);
}

#[test]
fn schema_errors_exit_2_without_a_report() {
    let dir = TempDir::new().unwrap();
    for (name, body) in [
        ("bad.json", "{not json"),
        ("unknown.json", r#"{"kind":"coins","n":2}"#),
        ("short.json", r#"{"kind":"table","n":3,"values":[0,1]}"#),
    ] {
        let input = write(&dir, name, body);
        let out = infoclust(&["cluster", arg(&input)]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty());
    }
    assert_eq!(infoclust(&["cluster", "/nonexistent/source.json"]).status.code(), Some(2));
    assert_eq!(infoclust(&["cluster"]).status.code(), Some(2));
}

#[test]
fn invalid_sources_exit_3() {
    let dir = TempDir::new().unwrap();
    let cov = write(&dir, "cov.json", r#"{"kind":"gaussian","cov":[[1,2],[2,1]]}"#);
    assert_eq!(infoclust(&["cluster", arg(&cov)]).status.code(), Some(3));
    let table = write(&dir, "t.json", r#"{"kind":"table","n":2,"values":[0,1,1,3]}"#);
    assert_eq!(infoclust(&["cluster", arg(&table)]).status.code(), Some(3));
    assert_eq!(infoclust(&["validate", arg(&table)]).status.code(), Some(3));
}

#[test]
fn convergence_failure_exits_4_with_partial_report() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let n = 8;
    let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let cov: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * a[j][k]).sum::<f64>() + if i == j { 0.3 } else { 0.0 }).collect())
        .collect();
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.json", &serde_json::json!({"kind": "gaussian", "cov": cov}).to_string());
    // no floating point gap can close to 1e-300
    let out = infoclust(&["cluster", arg(&input), "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(4));
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert!(!report.complete);
    assert_eq!(report.error.unwrap().kind, "convergence");
    assert!(report.differential_entropy);
}

#[test]
fn early_stop_reports_a_truncated_hierarchy() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "m.json", MOTIVATING);
    let by_size = Report::from_json(&stdout(&infoclust(&["cluster", arg(&input), "--stop-size", "3"]))).unwrap();
    assert_eq!(by_size.critical_values, vec![1.0, 2.0]);
    assert!(!by_size.complete);
    let out = infoclust(&["cluster", arg(&input), "--stop-gamma", "1.5", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    // the γ = 1 level is the first at or below 1.5, leaving three trees: {1,2,3}, {4,5}, {6}
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert_eq!((nodes, edges), (9, 6));
}

#[test]
fn threads_and_environment_tolerance() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "m.json", MOTIVATING);
    let serial = stdout(&infoclust(&["cluster", arg(&input)]));
    assert_eq!(serial, stdout(&infoclust(&["cluster", arg(&input), "--threads", "3"])));
    assert_eq!(serial, stdout(&infoclust(&["cluster", arg(&input), "--threads", "0"])));
    let out = Command::new(env!("CARGO_BIN_EXE_infoclust"))
        .args(["cluster", arg(&input)])
        .env("INFOCLUST_TOL", "1e-7")
        .output()
        .unwrap();
    assert_eq!(Report::from_json(&stdout(&out)).unwrap().tol, 1e-7);
    let out = Command::new(env!("CARGO_BIN_EXE_infoclust"))
        .args(["cluster", arg(&input)])
        .env("INFOCLUST_TOL", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kind_flag_overrides_the_document() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rows.json", r#"{"rows":[[0,0,1],[1,1,1],[0,0,0],[1,1,0]]}"#);
    assert_eq!(infoclust(&["cluster", arg(&input)]).status.code(), Some(2));
    let out = infoclust(&["cluster", arg(&input), "--kind", "samples"]);
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.source, "samples");
    assert_eq!(report.partitions[1], vec![vec![1, 2], vec![3]]);
}

#[test]
fn validate_runs() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "m.json", MOTIVATING);
    let out = infoclust(&["validate", arg(&input)]);
    assert_eq!(out.status.code(), Some(0));
    let report: ValidationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.all_agree);
    assert_eq!(report.checks.len(), 4);

    let out = infoclust(&["validate", "--random", "--n", "5", "--seed", "9", "--count", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let report: ValidationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.instances, 100);
    assert!(report.all_agree);

    let big = write(&dir, "big.json", r#"{"kind":"bits","universe":["a"],"vars":[["a"],["a"],["a"],["a"],["a"],["a"],["a"],["a"],["a"]]}"#);
    assert_eq!(infoclust(&["validate", arg(&big)]).status.code(), Some(2));
    assert_eq!(infoclust(&["validate"]).status.code(), Some(2));
}
