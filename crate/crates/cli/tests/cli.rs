use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dichotomy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dichotomy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    let text = String::from_utf8_lossy(&o.stdout);
    serde_json::from_str(text.lines().next().expect("one line")).expect("json line")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_sat_and_unsat() {
    let dir = TempDir::new().unwrap();
    let path = file(
        &dir,
        "path.csp",
        "rel NEQ 2 : 01 10\nc NEQ 0 1\nc NEQ 1 2\n",
    );
    let o = dichotomy(&["solve", s(&path)]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["verdict"], "sat");
    assert_eq!(v["engine"], "two_sat");
    let model = v["model"].as_str().unwrap();
    assert!(model == "010" || model == "101");

    let tri = file(&dir, "tri.csp", "c NEQ 0 1\nc NEQ 1 2\nc NEQ 0 2\n");
    let o = dichotomy(&["solve", s(&tri), "--engine", "xor"]);
    assert_eq!(code(&o), 10);
    assert_eq!(stdout_json(&o)["engine"], "xor");
}

#[test]
fn wrong_engine_is_a_class_error() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "a.csp", "c ONE_IN_THREE 0 1 2\n");
    assert_eq!(code(&dichotomy(&["solve", s(&f), "--engine", "horn"])), 20);
    assert_eq!(code(&dichotomy(&["solve", s(&f), "--engine", "bogus"])), 20);
}

#[test]
fn classify_modes() {
    let dir = TempDir::new().unwrap();
    let andnot = file(&dir, "a.csp", "rel ANDNOT 2 : 10\n");
    let sat = stdout_json(&dichotomy(&["classify", "--mode", "sat", s(&andnot)]));
    assert_eq!(sat["class"], "EquivWKL");
    let ramsey = stdout_json(&dichotomy(&["classify", "--mode", "ramsey", s(&andnot)]));
    assert!(ramsey["class"]
        .as_str()
        .unwrap()
        .starts_with("ProvableRCA0"));
    let hard = file(&dir, "h.csp", "c ONE_IN_THREE 0 1 2\n");
    let c = stdout_json(&dichotomy(&["classify", "--mode", "complexity", s(&hard)]));
    assert_eq!(c["class"], "NPComplete");
}

#[test]
fn props_one_line_per_relation() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "p.csp", "c IMPL 0 1\nc NEQ 1 2\n");
    let o = dichotomy(&["props", s(&f)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["relation"], "IMPL");
    assert_eq!(lines[0]["profile"]["horn"], true);
    assert_eq!(lines[1]["profile"]["affine"], true);
}

#[test]
fn input_errors_exit_20() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.csp", "rel R 2 : 001\n");
    let o = dichotomy(&["solve", s(&bad)]);
    assert_eq!(code(&o), 20);
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:11"));
    assert_eq!(code(&dichotomy(&["solve", "/nonexistent/file.csp"])), 20);
    assert_eq!(code(&dichotomy(&["frobnicate"])), 20);
    assert_eq!(code(&dichotomy(&["--help"])), 0);
}

#[test]
fn homog_both_algorithms() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "h.csp", "c IMPL 0 1\nc IMPL 1 2\nc X 2\nL 0 1 2 3\n");
    for algo in ["horn", "search"] {
        let o = dichotomy(&["homog", s(&f), "--algo", algo]);
        assert_eq!(code(&o), 0, "{algo}");
        let v = stdout_json(&o);
        assert_eq!(v["verified"], true);
    }
    let no_l = file(&dir, "n.csp", "c IMPL 0 1\n");
    assert_eq!(code(&dichotomy(&["homog", s(&no_l)])), 20);
    let unsat = file(&dir, "u.csp", "c X 0\nc NOTX 0\nL 0\n");
    assert_eq!(code(&dichotomy(&["homog", s(&unsat)])), 10);
}

#[test]
fn reductions_write_files() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out.csp");

    let tree = file(&dir, "t.txt", "0\n1\n10\n11\n");
    assert_eq!(
        code(&dichotomy(&["reduce", "tree2sat", s(&tree), s(&out)])),
        0
    );
    let o = dichotomy(&["solve", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout_json(&o)["model"].as_str().unwrap().starts_with('1'));

    let graph = file(&dir, "g.txt", "e 0 1\ne 1 2\ne 2 0\n");
    assert_eq!(
        code(&dichotomy(&["reduce", "graph2neq", s(&graph), s(&out)])),
        0
    );
    assert_eq!(code(&dichotomy(&["solve", s(&out)])), 10);

    let defs = file(
        &dir,
        "f.csp",
        "c OR 0 1\ndef OR x y exists z : NEQ x z ; IMPL z y\n",
    );
    let o = dichotomy(&["reduce", "flatten", s(&defs), s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["constraints"], 2);

    let loc = file(&dir, "l.csp", "c IMPL 0 1\nL 0 1\n");
    let o = dichotomy(&["reduce", "unlocalize", s(&loc), s(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["detail"]["entailed"], 1);

    let oracle = file(&dir, "o.txt", "halt 0 2 3\n");
    assert_eq!(code(&dichotomy(&["reduce", "dnr", s(&oracle), s(&out)])), 0);
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "rel XOR2_1 2 : 10 01\nvar 3\nc XOR2_1 1 2\nL 0 1 2\n"
    );
    assert_eq!(
        code(&dichotomy(&[
            "reduce",
            "dnr",
            s(&oracle),
            s(&out),
            "--stage",
            "2"
        ])),
        0
    );
    assert!(!fs::read_to_string(&out).unwrap().contains("c XOR"));
}

#[test]
fn gen_is_seeded_and_reparses() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csp");
    let args = [
        "gen",
        "--kind",
        "2sat",
        "--vars",
        "10",
        "--constraints",
        "20",
        "--seed",
        "7",
    ];
    assert_eq!(
        code(&dichotomy(&[&args[..], &["--out", s(&a)]].concat())),
        0
    );
    let again = dichotomy(&args);
    assert_eq!(
        fs::read_to_string(&a).unwrap(),
        String::from_utf8(again.stdout).unwrap()
    );
    assert_eq!(code(&dichotomy(&["solve", s(&a)])) % 10, 0);
}

#[test]
fn dimacs_export() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "d.csp", "c NEQ 0 1\n");
    let o = dichotomy(&["export-dimacs", s(&f)]);
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "p cnf 2 2\n1 2 0\n-1 -2 0\n"
    );
}

#[test]
fn mixed_bench_suite() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bench.jsonl");
    let o = dichotomy(&["bench", "--suite", "mixed", "--out", s(&out), "--seed", "4"]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["verdict"], v["brute_force"]);
    }
    assert_eq!(stdout_json(&o)["disagreements"], 0);
}
