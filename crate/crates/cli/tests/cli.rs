use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use listcol::detect::{is_free_of, Pattern};
use listcol::io;
use tempfile::TempDir;

fn listcol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_listcol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &TempDir, name: &str, forbid: &str, seed: u64) -> PathBuf {
    let path = dir.path().join(name);
    let seed = seed.to_string();
    let out = listcol(&[
        "gen", "--n", "14", "--density", "0.3", "--forbid", forbid, "--require-p7", "--seed", &seed, "-o",
        s(&path),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn solve_prints_a_verifying_certificate() {
    let dir = TempDir::new().unwrap();
    let path = put(&dir, "c5.col", "p 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    let out = listcol(&["solve", s(&path)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("c answer yes"));
    let col = io::parse_certificate(&text).unwrap();
    let inst = io::parse_instance(&fs::read_to_string(&path).unwrap()).unwrap().into_instance(3).unwrap();
    col.verify(inst.graph(), inst.lists()).unwrap();
}

#[test]
fn solve_answers_no_and_rejects() {
    let dir = TempDir::new().unwrap();
    let k4 = put(&dir, "k4.col", "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    let out = listcol(&["solve", s(&k4)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("c answer no"));

    // P3 + P4 itself is rejected when the target is p3p4.
    let p3p4 = put(&dir, "p3p4.col", "p 7 5\ne 1 2\ne 2 3\ne 4 5\ne 5 6\ne 6 7\n");
    let out = listcol(&["solve", s(&p3p4), "--h", "p3p4"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("p3p4"));
    let out = listcol(&["solve", s(&p3p4), "--h", "p3p4", "--verify-freeness", "off"]);
    assert_eq!(code(&out), 0);

    let bad = put(&dir, "bad.col", "p 2 1\ne 1 3\n");
    assert_eq!(code(&listcol(&["solve", s(&bad)])), 2);
    assert_eq!(code(&listcol(&["solve", "/nonexistent/file.col"])), 2);
    assert_eq!(code(&listcol(&["solve"])), 2);
}

#[test]
fn lists_are_honoured() {
    let dir = TempDir::new().unwrap();
    let path = put(&dir, "p2.col", "p 2 1\ne 1 2\nl 1 2\nl 2 2\n");
    assert_eq!(code(&listcol(&["solve", s(&path)])), 1);
    assert_eq!(code(&listcol(&["oracle", s(&path)])), 1);
    let path = put(&dir, "p2b.col", "p 2 1\ne 1 2\nl 1 2\nl 2 2 3\n");
    let out = listcol(&["solve", s(&path)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("v 2 3"));
}

#[test]
fn oracle_budget_exhaustion() {
    let dir = TempDir::new().unwrap();
    let path = put(&dir, "petersen.col", &io::write_graph(&listcol::Graph::petersen()));
    assert_eq!(code(&listcol(&["oracle", s(&path)])), 0);
    assert_eq!(code(&listcol(&["oracle", s(&path), "--nodes", "1"])), 3);
    assert_eq!(code(&listcol(&["oracle", s(&path), "--k", "2"])), 1);
}

#[test]
fn classify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let claw = put(&dir, "claw.col", "p 4 3\ne 1 2\ne 1 3\ne 1 4\n");
    let out = listcol(&["classify", s(&claw)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("NPCompleteExpected"));
    let forest = put(&dir, "p3p4.col", "p 7 5\ne 1 2\ne 2 3\ne 4 5\ne 5 6\ne 6 7\n");
    let out = listcol(&["classify", s(&forest)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("PolynomialLinearForest"));
    let big = put(&dir, "p8.col", &io::write_graph(&listcol::Graph::path(8)));
    assert_eq!(code(&listcol(&["classify", s(&big)])), 2);
}

#[test]
fn check_free_reports_witness() {
    let dir = TempDir::new().unwrap();
    let path = put(&dir, "p7.col", &io::write_graph(&listcol::Graph::path(8)));
    let out = listcol(&["check-free", s(&path), "--pattern", "p2+p5"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("c witness"));
    let out = listcol(&["check-free", s(&path), "--pattern", "k3", "--pattern", "c4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&listcol(&["check-free", s(&path), "--pattern", "q9"])), 2);
}

#[test]
fn gen_is_deterministic_and_free() {
    let dir = TempDir::new().unwrap();
    let a = gen(&dir, "a.col", "k4,p3p4", 1);
    let b = gen(&dir, "b.col", "k4,p3p4", 1);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    for seed in 0..5 {
        let path = gen(&dir, &format!("g{seed}.col"), "k4,p3p4", seed);
        let out = listcol(&["check-free", s(&path), "--pattern", "k4", "--pattern", "p3p4"]);
        assert_eq!(code(&out), 0);
        let g = io::parse_graph(&fs::read_to_string(&path).unwrap()).unwrap();
        assert!(is_free_of(&g, &[Pattern::k4(), Pattern::p3p4()]).unwrap());
    }
    let out = listcol(&["gen", "--n", "12", "--forbid", "p2", "--seed", "4"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("\ne "));
    let out = listcol(&["gen", "--n", "12", "--density", "1", "--forbid", "k3", "--attempts", "3"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn gen_with_lists_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("l.col");
    let out = listcol(&["gen", "--n", "10", "--lists", "2", "--seed", "7", "-o", s(&path)]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&path).unwrap();
    let inst = io::parse_instance(&text).unwrap().into_instance(3).unwrap();
    assert_eq!(io::write_instance(&inst), text);
    let oracle = code(&listcol(&["oracle", s(&path)]));
    let solve = code(&listcol(&["solve", s(&path), "--verify-freeness", "off"]));
    assert_eq!(oracle, solve);
}

#[test]
fn traces_and_certificates_repeat() {
    let dir = TempDir::new().unwrap();
    let path = gen(&dir, "t.col", "k4,p3p4", 3);
    let mut runs = Vec::new();
    for i in 0..2 {
        let trace = dir.path().join(format!("trace{i}"));
        let cert = dir.path().join(format!("cert{i}"));
        let out = listcol(&["solve", s(&path), "--h", "p3p4", "--trace", s(&trace), "--certificate", s(&cert)]);
        assert!(code(&out) <= 1);
        let cert = fs::read(&cert).unwrap_or_default();
        runs.push((fs::read(&trace).unwrap(), cert));
    }
    assert!(!runs[0].0.is_empty());
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn gadget_commands() {
    let dir = TempDir::new().unwrap();
    let f = put(&dir, "f.txt", "v 3\nc 1 2 3\n");
    let out_path = dir.path().join("g.col");
    let out = listcol(&["gadget", "build", s(&f), "--prime", "-o", s(&out_path)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("c vertices 19"));
    let inst = io::parse_instance(&fs::read_to_string(&out_path).unwrap()).unwrap().into_instance(5).unwrap();
    assert_eq!(inst.graph().vertex_count(), 2 * 3 + 8 + 5);
    for lemma in ["11", "12", "13"] {
        let out = listcol(&["gadget", "verify", s(&f), "--lemma", lemma]);
        assert_eq!(code(&out), 0, "lemma {lemma}");
        assert!(stdout(&out).contains("c answer confirmed"));
    }
    let unsat = put(&dir, "u.txt", "v 1\nc 1 1 1\n");
    assert_eq!(code(&listcol(&["gadget", "verify", s(&unsat), "--lemma", "11"])), 0);
    assert_eq!(code(&listcol(&["gadget", "verify", s(&f), "--lemma", "14"])), 2);
}

#[test]
fn json_and_version() {
    let dir = TempDir::new().unwrap();
    let path = put(&dir, "c5.col", "p 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    let out = listcol(&["--json", "solve", s(&path)]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["certificate"].as_array().unwrap().len(), 5);
    assert_eq!(v["stats"]["target"], "p2p5");
    let out = listcol(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains(env!("CARGO_PKG_VERSION")));
}
