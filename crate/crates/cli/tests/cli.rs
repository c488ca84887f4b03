use std::path::PathBuf;
use std::process::{Command, Output};

use germlab::{AnalyzeReport, FamilyReport};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_germlab"))
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn catalog_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env("GERMLAB_THREADS", "2").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn analyze_succeeds_on_catalog_germ() {
    let o = run(&["analyze", catalog_file("s2.germ").to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("S2"));
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let path = catalog_file("b.germ");
    let a = run(&["analyze", "--json", path.to_str().unwrap()]);
    let b = run(&["analyze", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let report: AnalyzeReport = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report.mu_image, Some(2));
    assert_eq!(serde_json::to_string_pretty(&report).unwrap().trim(), String::from_utf8_lossy(&a.stdout).trim());
}

#[test]
fn family_json_round_trips() {
    let path = catalog_file("s1-trivial.germ");
    let o = run(&["family", "--json", "--samples", "-1,1/2", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: FamilyReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.samples, vec!["-1", "1/2"]);
    let again = run(&["family", "--json", "--samples", "-1,1/2", path.to_str().unwrap()]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn malformed_file_exits_one_with_line() {
    let p = write("bad.germ", "germ x\nsource n=2\nbranch (x, y^2\n");
    let o = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn invalid_branch_reports_its_line() {
    let p = write("offset.germ", "germ two\nsource n=2\nbranch (x, y^2, x*y)\nbranch at (1, 0) : (x, y, x^2)\n");
    let o = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn missing_file_exits_one() {
    let o = run(&["analyze", "/nonexistent/germ.germ"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn multi_parameter_family_exits_one() {
    let p = write("two-params.germ", "germ S1\nsource n=2\nbranch (x, y^2, x^2*y + y^3)\nunfold a, b : branch 1 += (0, 0, a*y + b*x*y)\n");
    let o = run(&["family", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("one parameter required"));
}

#[test]
fn unsupported_case_exits_two() {
    let p = write("multi-family.germ", "germ two\nsource n=1\nbranch (t, 0)\nbranch at (1) : (0, t - 1)\nunfold s : branch 1 += (0, s)\n");
    let o = run(&["family", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bad_samples_exit_one() {
    let o = run(&["family", "--samples", "1,x", catalog_file("s2-family.germ").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn bad_thread_count_exits_one() {
    let o = bin().args(["analyze", catalog_file("s1.germ").to_str().unwrap()]).env("GERMLAB_THREADS", "zero").output().unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn catalog_filter_and_json() {
    let o = run(&["catalog", "--json", "--filter", "^S[0-9]$"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let summary: germlab::catalog::CatalogSummary = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<_> = summary.entries.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names, ["S1", "S2", "S3", "S4"]);
    assert_eq!(summary.failed, 0);
}

#[test]
fn catalog_rejects_bad_regex() {
    let o = run(&["catalog", "--filter", "("]);
    assert_eq!(code(&o), 1);
}
