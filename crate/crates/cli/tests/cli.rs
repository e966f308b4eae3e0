use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use gut_core::harness::CSV_HEADER;

fn gut(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gut"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn gut");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("gut-cli-{}-{name}", std::process::id()))
}

#[test]
fn solve_reads_stdin() {
    let out = gut(&["solve"], "2 2\n1 -1\n-1 1\n");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("kind: mixed\n"), "{text}");
    assert!(text.contains("row_strategy: 0.500000000 0.500000000"), "{text}");
}

#[test]
fn solve_reports_pure_saddle() {
    let out = gut(&["solve", "-"], "2 2\n3 5\n1 4\n");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("kind: pure"), "{text}");
    assert!(text.contains("value: 3.000000000"), "{text}");
}

#[test]
fn solve_rejects_bad_matrix() {
    let out = gut(&["solve"], "2 2\n1 2\n");
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn run_writes_csv_report() {
    let cfg = scratch("scenario.toml");
    let csv = scratch("report.csv");
    std::fs::write(&cfg, "name = \"duel\"\nexplorers = 3\naliens = 2\ntrials = 2\n").unwrap();
    let out = gut(
        &["run", "--config", cfg.to_str().unwrap(), "--seed", "5", "--out", csv.to_str().unwrap()],
        "",
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER.join(","));
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("duel,gut-fc,complete,random,3,2,0,2,"), "{}", lines[1]);
    std::fs::remove_file(cfg).ok();
    std::fs::remove_file(csv).ok();
}

#[test]
fn run_rejects_unknown_keys() {
    let cfg = scratch("bad.toml");
    std::fs::write(&cfg, "explorers = 3\nbogus = 1\n").unwrap();
    let out = gut(&["run", "--config", cfg.to_str().unwrap()], "");
    assert!(!out.status.success());
    std::fs::remove_file(cfg).ok();
}

#[test]
fn batch_lists_every_suite_row() {
    let out = gut(&["batch", "--suite", "paper-table8", "--trials", "1"], "");
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1 + 9);
    assert!(!gut(&["batch", "--suite", "nope"], "").status.success());
}

#[test]
fn bench_prints_one_row_per_shape() {
    let out = gut(&["gut-bench", "--depths", "1,2", "--sizes", "2", "--repeats", "3"], "");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(2).unwrap().starts_with("2,2,4,4,"), "{text}");
}
