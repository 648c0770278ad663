use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn qelim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qelim")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn value<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t')))
        .unwrap_or_else(|| panic!("no key {key:?} in\n{report}"))
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    stdout(&qelim(&full));
    path
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_and2() {
    let dir = TempDir::new().unwrap();
    let f = gen(dir.path(), "and.fn", &["and", "2"]);
    let out = stdout(&qelim(&["analyze", s(&f), "--uniform"]));
    assert!(out.contains("inf 1\t1/4\n"));
    assert!(out.contains("inf 2\t1/4\n"));
    assert_eq!(value(&out, "pr 0"), "3/4");
    assert_eq!(value(&out, "plurality_error"), "1/4");
    assert_eq!(value(&out, "variance_ratio"), "3/1");
    assert!(!out.contains('.'), "no floating point: {out}");
}

#[test]
fn analyze_constant_and_p_flag() {
    let dir = TempDir::new().unwrap();
    let c = gen(dir.path(), "c.fn", &["constant", "3"]);
    assert_eq!(
        value(&stdout(&qelim(&["analyze", s(&c), "--uniform"])), "inf_max"),
        "0/1"
    );
    let p = gen(dir.path(), "p.fn", &["parity", "3"]);
    let a = stdout(&qelim(&["analyze", s(&p), "--uniform"]));
    let b = stdout(&qelim(&["analyze", s(&p), "--p", "1/2"]));
    assert_eq!(a, b);
    let d = put(dir.path(), "half.dist", "1/2 1/2\n2/4 2/4\n1/2 1/2\n");
    assert_eq!(a, stdout(&qelim(&["analyze", s(&p), "--dist", s(&d)])));
}

#[test]
fn bound_reports() {
    let dir = TempDir::new().unwrap();
    let f = gen(dir.path(), "and.fn", &["and", "2"]);
    let out = stdout(&qelim(&["bound", s(&f), "--uniform", "--eps", "0"]));
    assert_eq!(value(&out, "bound"), "1/1");
    let same = stdout(&qelim(&["bound", s(&f), "--uniform", "--eps", "0", "--close", s(&f)]));
    assert_eq!(value(&same, "delta"), "0/1");
    assert_eq!(value(&same, "bound"), "1/1");

    let g = gen(dir.path(), "t.fn", &["tribes", "2", "2"]);
    let pf = gen(dir.path(), "pt.fn", &["perturbed-tribes", "2", "2", "1/4"]);
    let out = stdout(&qelim(&["bound", s(&pf), "--uniform", "--eps", "0", "--close", s(&g)]));
    assert_eq!(value(&out, "delta"), "1/16");
    // (7/16 − 1/16) / (3/16)
    assert_eq!(value(&out, "bound"), "2/1");
}

#[test]
fn eliminate_transcripts() {
    let dir = TempDir::new().unwrap();
    let f = gen(dir.path(), "d.fn", &["dictator", "2"]);
    let t = put(dir.path(), "d.tree", "Q 1\nL 0\nL 1\n");
    let out = stdout(&qelim(&["eliminate", s(&f), s(&t), "--uniform", "--eps", "0"]));
    assert_eq!(value(&out, "steps"), "1");
    assert_eq!(value(&out, "error_after"), "1/2");
    assert_eq!(value(&out, "influence_of_coordinate"), "1/2");

    let leaf = put(dir.path(), "leaf.tree", "L 0\n");
    let out = stdout(&qelim(&["eliminate", s(&f), s(&leaf), "--uniform", "--eps", "1/2"]));
    assert_eq!(value(&out, "steps"), "0");
    assert!(!out.contains("step\t"));

    let p = gen(dir.path(), "p.fn", &["parity", "3"]);
    let tree =
        "Q 1\n Q 2\n  Q 3\n   L 0\n   L 1\n  Q 3\n   L 1\n   L 0\n Q 2\n  Q 3\n   L 1\n   L 0\n  Q 3\n   L 0\n   L 1\n";
    let t = put(dir.path(), "p.tree", tree);
    let out = stdout(&qelim(&["eliminate", s(&p), s(&t), "--uniform", "--eps", "0"]));
    assert_eq!(value(&out, "steps"), "3");
    assert_eq!(out.matches("step\t").count(), 3);
    assert_eq!(value(&out, "plurality_error"), "1/2");
    assert_eq!(value(&out, "implied_lower_bound"), "1/1");
}

#[test]
fn eliminate_errors() {
    let dir = TempDir::new().unwrap();
    let f = gen(dir.path(), "and.fn", &["and", "2"]);
    let bad = put(dir.path(), "bad.tree", "Q 1\nL 0\nQ 1\nL 0\nL 1\n");
    let out = qelim(&["eliminate", s(&f), s(&bad), "--uniform", "--eps", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1→1"));
    let leaf = put(dir.path(), "leaf.tree", "L 0\n");
    let out = qelim(&["eliminate", s(&f), s(&leaf), "--uniform", "--eps", "1/8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
}

#[test]
fn optimal_complexity_and_witness() {
    let dir = TempDir::new().unwrap();
    let p = gen(dir.path(), "p.fn", &["parity", "3"]);
    assert_eq!(
        value(
            &stdout(&qelim(&["optimal", s(&p), "--uniform", "--eps", "0"])),
            "complexity"
        ),
        "3"
    );
    let a = gen(dir.path(), "a.fn", &["and", "2"]);
    assert_eq!(
        value(
            &stdout(&qelim(&["optimal", s(&a), "--uniform", "--eps", "1/4"])),
            "complexity"
        ),
        "0"
    );
    let c = gen(dir.path(), "c.fn", &["constant", "4", "1"]);
    assert_eq!(
        value(
            &stdout(&qelim(&["optimal", s(&c), "--uniform", "--eps", "0"])),
            "complexity"
        ),
        "0"
    );

    let f = gen(dir.path(), "pt.fn", &["perturbed-tribes", "2", "2", "1/4"]);
    let w = dir.path().join("w.tree");
    let out = stdout(&qelim(&[
        "optimal",
        s(&f),
        "--p",
        "1/4",
        "--eps",
        "1/10",
        "--emit-tree",
        s(&w),
    ]));
    let best = value(&out, "optimal_error").to_string();
    // re-score the witness through the elimination report
    let tr = stdout(&qelim(&["eliminate", s(&f), s(&w), "--p", "1/4", "--eps", "1/10"]));
    assert_eq!(value(&tr, "initial_error"), best);
    let depth: usize = value(&tr, "initial_depth").parse().unwrap();
    assert!(depth <= value(&out, "complexity").parse().unwrap());
}

#[test]
fn optimal_capacity_error() {
    let dir = TempDir::new().unwrap();
    let p = gen(dir.path(), "p.fn", &["parity", "4"]);
    let out = qelim(&["optimal", s(&p), "--uniform", "--eps", "0", "--max-oracle-states", "80"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
}

#[test]
fn gen_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let text = stdout(&qelim(&["gen", "tribes", "2", "2"]));
    assert_eq!(text.lines().nth(2).unwrap().split(' ').count(), 16);
    for (i, args) in [
        vec!["tribes", "2", "3"],
        vec!["tribes-auto", "6"],
        vec!["perturbed-tribes", "4", "2", "1/4"],
        vec!["dictator", "3", "2"],
        vec!["majority", "5"],
        vec!["or", "4"],
    ]
    .iter()
    .enumerate()
    {
        let path = gen(dir.path(), &format!("{i}.fn"), args);
        let original = fs::read_to_string(&path).unwrap();
        let f = qelim::format::parse_function(&original, "x", &qelim::Limits::default()).unwrap();
        assert_eq!(qelim::format::write_function(&f), original);
    }
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = TempDir::new().unwrap();
    let bad = put(dir.path(), "bad.fn", "# header\n2 2\n0 1\n0 0 1\n");
    let out = qelim(&["analyze", s(&bad), "--uniform"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.fn:4"), "{err}");
    let f = gen(dir.path(), "and.fn", &["and", "2"]);
    let d = put(dir.path(), "bad.dist", "1/2 1/2\n1/3 1/3\n");
    let out = qelim(&["analyze", s(&f), "--dist", s(&d)]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.dist:2"));
}

#[test]
fn verify_suites() {
    for suite in ["tribes-influence", "theorem1-grid", "resample-identity"] {
        let out = stdout(&qelim(&["verify", suite]));
        assert!(out.starts_with("pass\t"), "{out}");
    }
    let out = qelim(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!qelim(&["gen", "xor", "3"]).status.success());
}
