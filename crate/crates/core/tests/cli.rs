use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_modsat"));
    c.env_remove("MODSAT_BOUND_WORLDS");
    c
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn kd_xor_instance_is_unsat() {
    let d = TempDir::new().unwrap();
    let base = write(&d, "xor.base", "xor\nconst1\n");
    let f = write(&d, "f.mc", "g1 = CONST 1\ng2 = DIA 1 g1\ng3 = xor g2 g1\nOUTPUT g3\n");
    let o = run(&["sat", "--frame", "KD", "--base", s(&base), s(&f)]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["result"], "UNSAT");
    assert_eq!(v["engine"], "xor");
    // over K the ◇1 may fail, so the instance is satisfiable
    let o = run(&["sat", "--frame", "K", "--base", s(&base), s(&f)]);
    assert_eq!(code(&o), 0);
}

#[test]
fn classify_s5_two_relations() {
    let d = TempDir::new().unwrap();
    let base = write(&d, "s1.base", "# x and not y\nandnot 2 0010\n");
    let o = run(&["classify", "--frame", "S5", "--k", "2", "--ops", "box", "--base", s(&base)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["class"], "PSPACE-complete");
    let o = run(&["classify", "--frame", "S5", "--k", "1", "--ops", "box", "--base", s(&base)]);
    assert_eq!(json(&o)["class"], "NP-complete");
}

#[test]
fn classify_verdict_json_shape() {
    let d = TempDir::new().unwrap();
    let base = write(&d, "m.base", "and\nor\nconst0\nconst1\n");
    let o = run(&["classify", "--frame", "K", "--base", s(&base)]);
    assert_eq!(stdout(&o), "{\"class\":\"PSPACE-complete\",\"citation\":\"K-theorem/S11-M\",\"engine_hint\":\"tableau\"}\n");
    let o = run(&["classify", "--frame", "K4", "--base", s(&base)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn commuted_xor_is_equivalent() {
    let d = TempDir::new().unwrap();
    let a = write(&d, "a.mc", "xor(x, y)");
    let b = write(&d, "b.mc", "xor(y, x)");
    let o = run(&["equiv", s(&a), s(&b), "--frame", "K"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["equivalent"], true);
    let c = write(&d, "c.mc", "xor(y, dia 1 x)");
    let o = run(&["equiv", s(&a), s(&c), "--format", "text"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "false\n"));
    // outside L the oracle decides
    let e = write(&d, "e.mc", "and(x, y)");
    let f = write(&d, "f.mc", "and(y, and(x, x))");
    let o = run(&["equiv", s(&e), s(&f)]);
    assert_eq!(json(&o)["method"], "oracle");
    assert_eq!(code(&o), 0);
}

#[test]
fn normalize_prints_the_canonical_netlist() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.mc", "xor(dia 1 y, xor(1, x))");
    let o = run(&["normalize", s(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "g1 = VAR x\ng2 = CONST 1\ng3 = VAR y\ng4 = DIA 1 g3\ng5 = xor3 g1 g2 g4\nOUTPUT g5\n");
    let o = run(&["minimize", s(&f), "--frame", "S4"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn dual_swaps_operators() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.mc", "g1 = VAR x\ng2 = BOX 1 g1\nOUTPUT g2\n");
    let o = run(&["dual", s(&f)]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("DIA 1"), "{text}");
    assert!(!text.contains("BOX"), "{text}");
}

#[test]
fn witnesses_round_trip_through_the_oracle() {
    let d = TempDir::new().unwrap();
    for (formula, frame, task) in [
        ("and(dia 1 x, dia 1 not(x))", "K", "sat"),
        ("and(box 1 x, dia 2 not(y))", "KD", "sat"),
        ("xor(dia 1 x, box 1 y)", "K", "sat"),
        ("and(x, dia 1 not(x))", "T", "sat"),
        ("or(box 1 x, dia 1 y)", "K", "valid"),
    ] {
        let f = write(&d, "f.mc", formula);
        let o = run(&[task, "--frame", frame, s(&f)]);
        assert!(code(&o) <= 1, "{formula}: {}", String::from_utf8_lossy(&o.stderr));
        let v = json(&o);
        assert!(v.get("witness").is_some(), "{formula}: {v}");
        let w = write(&d, "w.json", &stdout(&o));
        let o = run(&["oracle", "--frame", frame, s(&f), "--check-witness", s(&w)]);
        assert_eq!(code(&o), 0, "{formula}");
        assert_eq!(json(&o)["witness_ok"], true);
    }
}

#[test]
fn wrong_witness_is_rejected() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.mc", "dia 1 x");
    let w = write(&d, "w.json", r#"{"worlds":[0],"relations":{"1":[]},"valuation":{"x":[0]},"root":0}"#);
    let o = run(&["oracle", s(&f), "--check-witness", s(&w)]);
    assert_eq!(code(&o), 1);
    let bad = write(&d, "bad.json", r#"{"worlds":[0],"relations":{"1":[[0,5]]},"valuation":{},"root":0}"#);
    let o = run(&["oracle", s(&f), "--check-witness", s(&bad)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn exit_codes() {
    let d = TempDir::new().unwrap();
    let unsat = write(&d, "u.mc", "and(dia 1 x, box 1 not(x))");
    assert_eq!(code(&run(&["sat", s(&unsat)])), 1);
    assert_eq!(code(&run(&["valid", s(&unsat)])), 1);
    let taut = write(&d, "t.mc", "or(x, not(x))");
    assert_eq!(code(&run(&["valid", s(&taut)])), 0);
    // unsatisfiable over T, beyond what the bounded oracle can settle
    let t_unsat = write(&d, "tu.mc", "and(box 1 x, not(x))");
    let o = run(&["sat", "--frame", "T", s(&t_unsat)]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["result"], "UNKNOWN");
    assert_eq!(code(&run(&["sat", "--frame", "Q", s(&taut)])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["sat", "/nonexistent/f.mc"])), 2);
}

#[test]
fn parse_errors_carry_locations() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.mc", "g1 = VAR x\ng2 = DIA 1 g9\nOUTPUT g2\n");
    let o = run(&["sat", s(&f)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with(&format!("error: {}:2:", s(&f))), "{err}");
    assert!(!err.contains("panicked"));
}

#[test]
fn forced_engine_must_apply() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.mc", "and(x, not(y))");
    let o = run(&["sat", "--engine", "xor", s(&f)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("xor"));
    let o = run(&["sat", "--engine", "oracle", s(&f)]);
    assert_eq!((code(&o), json(&o)["engine"].as_str()), (0, Some("oracle")));
}

#[test]
fn base_file_restricts_inputs() {
    let d = TempDir::new().unwrap();
    let base = write(&d, "b.base", "or\n");
    let f = write(&d, "f.mc", "and(x, y)");
    assert_eq!(code(&run(&["sat", "--base", s(&base), s(&f)])), 2);
}

#[test]
fn batches_keep_input_order() {
    let d = TempDir::new().unwrap();
    let files: Vec<PathBuf> = ["x", "and(x, not(x))", "dia 1 x", "box 1 0"]
        .iter()
        .enumerate()
        .map(|(i, f)| write(&d, &format!("f{i}.mc"), f))
        .collect();
    let mut args = vec!["sat", "--jobs", "3"];
    args.extend(files.iter().map(|p| s(p)));
    let o = run(&args);
    assert_eq!(code(&o), 1);
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let results: Vec<&str> = lines.iter().map(|v| v["result"].as_str().unwrap()).collect();
    assert_eq!(results, ["SAT", "UNSAT", "SAT", "SAT"]);
    for (v, p) in lines.iter().zip(&files) {
        assert_eq!(v["input"], s(p));
    }
}

#[test]
fn json_output_is_reproducible() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.mc", "and(dia 1 and(x, dia 2 y), box 1 or(not(x), y))");
    let a = stdout(&run(&["sat", s(&f)]));
    let b = stdout(&run(&["sat", s(&f)]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(a.trim()).unwrap();
    for key in ["task", "result", "engine", "witness"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn world_bound_from_the_environment() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.mc", "and(dia 1 x, dia 1 not(x))");
    let o = bin().args(["sat", "--frame", "S4", s(&f)]).output().unwrap();
    assert_eq!(code(&o), 0);
    let o = bin().env("MODSAT_BOUND_WORLDS", "1").args(["sat", "--frame", "S4", s(&f)]).output().unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = bin()
        .args(["sat", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"and(x, not(x))").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
}
