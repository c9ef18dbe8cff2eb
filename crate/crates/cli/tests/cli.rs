//! End-to-end runs of the `tensym` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const B2: &str =
    "algebra { m:1 elements: 0 1 leq: (0,1) N: 0->1 1->0 G: 0->0 1->1 H: 0->0 1->1 }\n";
const T3_FAILING: &str =
    "algebra { m:1 elements: 0 1 leq: (0,1) N: 0->1 1->0 G: 0->1 1->1 H: 0->0 1->1 }\n";
const K3: &str = "algebra {\n  m: 1\n  elements: 0 c 1\n  leq: (0,c) (c,1)\n  N: 0->1 c->c 1->0\n  G: 0->0 c->c 1->1\n  H: 0->0 c->c 1->1\n}\n";
const CHAIN_ID: &str = "space { m:1 points: a b leq: (a,b) g: a->a b->b RG: N/A RH: N/A }\n";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensym"))
        .args(args)
        .env_remove("TENSYM_GUARD")
        .output()
        .unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The 16-element algebra of the 4-cycle space, via `complex`.
fn sixteen(dir: &TempDir) -> PathBuf {
    let all: Vec<String> = ["a", "b", "c", "d"]
        .iter()
        .flat_map(|x| {
            ["a", "b", "c", "d"]
                .iter()
                .map(move |y| format!("({x},{y})"))
        })
        .collect();
    let all = all.join(" ");
    let space = write(
        dir,
        "cycle.mdl",
        &format!(
            "space {{ m:2 points: a b c d leq: N/A g: a->b b->c c->d d->a RG: {all} RH: {all} }}"
        ),
    );
    let out = dir.path().join("sixteen.mdl");
    assert_eq!(
        run(&["complex", arg(&space), "-o", arg(&out)])
            .status
            .code(),
        Some(0)
    );
    out
}

#[test]
fn check_passes_b2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "b2.mdl", B2);
    let out = run(&["check", arg(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("classification: De Morgan, Kleene, Boolean, tense algebra"));
}

#[test]
fn check_reports_t3_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.mdl", T3_FAILING);
    let out = run(&["check", arg(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let failing: Vec<&str> = text.lines().filter(|l| l.contains("FAIL  ")).collect();
    assert_eq!(failing.len(), 1);
    assert!(
        failing[0].contains("T3") && failing[0].ends_with("witness x=1"),
        "{text}"
    );
}

#[test]
fn check_json_report() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.mdl", T3_FAILING);
    let out = run(&["--report", "json", "check", arg(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let failed: Vec<&serde_json::Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["witness"]["x"], "1");
}

#[test]
fn check_rejects_non_order_reversing_space() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "chain.mdl", CHAIN_ID);
    let out = run(&["check", arg(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let first_fail = text.lines().find(|l| l.contains("FAIL")).unwrap();
    assert!(
        first_fail.contains("g order-reversing") && first_fail.contains("x=a, y=b"),
        "{text}"
    );
}

#[test]
fn verify_t2_on_k3() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k3.mdl", K3);
    let out = run(&["verify-t2", arg(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        "2 congruences ↔ 2 tms-subsets, anti-isomorphism verified"
    );
}

#[test]
fn dual_then_complex_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k3.mdl", K3);
    let dual = dir.path().join("dual.mdl");
    assert_eq!(
        run(&["dual", arg(&f), "-o", arg(&dual)]).status.code(),
        Some(0)
    );
    assert_eq!(run(&["check", arg(&dual)]).status.code(), Some(0));
    assert_eq!(run(&["roundtrip", arg(&dual)]).status.code(), Some(0));
    let back = dir.path().join("back.mdl");
    assert_eq!(
        run(&["complex", arg(&dual), "-o", arg(&back)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(run(&["roundtrip", arg(&back)]).status.code(), Some(0));
    let text = fs::read_to_string(&back).unwrap();
    assert!(
        text.starts_with("algebra {") && text.contains("elements: empty"),
        "{text}"
    );
}

#[test]
fn congruence_methods_agree() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k3.mdl", K3);
    let out = run(&["congruences", arg(&f), "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("direct: 2 congruences"));
    assert!(text.contains("dual: 2 tms-subsets"));
    assert!(text.contains("routes agree: yes"));
    let direct = stdout(&run(&["congruences", arg(&f), "--method", "direct"]));
    assert!(direct.contains("{0} {c} {1}") && !direct.contains("dual:"));
}

#[test]
fn size_guard_exit_code_and_overrides() {
    let dir = TempDir::new().unwrap();
    let f = sixteen(&dir);
    let out = run(&["verify-t2", arg(&f)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size guard"));
    // the dual route only scans the 4-point space
    assert_eq!(
        run(&["congruences", arg(&f), "--method", "dual"])
            .status
            .code(),
        Some(0)
    );
    let raised = run(&["--guard-size", "16", "verify-t2", arg(&f)]);
    assert_eq!(raised.status.code(), Some(0));
    assert!(stdout(&raised).starts_with("2 congruences ↔ 2 tms-subsets"));
    let env = Command::new(env!("CARGO_BIN_EXE_tensym"))
        .args(["verify-t2", arg(&f)])
        .env("TENSYM_GUARD", "algebra=16")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.mdl");
    assert_eq!(run(&["check", arg(&missing)]).status.code(), Some(2));
    let partial = write(&dir, "partial.mdl", &B2.replace("N: 0->1 1->0", "N: 0->1"));
    let out = run(&["check", arg(&partial)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("N not total"));
    let syntax = write(
        &dir,
        "syntax.mdl",
        "algebra {\n  m: 1\n  elements: 0 1\n  leq: (0 1)\n}\n",
    );
    let out = run(&["check", arg(&syntax)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4, column 11"));
    let b2 = write(&dir, "b2.mdl", B2);
    assert_eq!(run(&["complex", arg(&b2)]).status.code(), Some(2));
}

#[test]
fn invalid_algebra_is_a_failed_check_for_dual() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.mdl", T3_FAILING);
    let out = run(&["dual", arg(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("T3"));
}

#[test]
fn enumerate_writes_models() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("corpus");
    let out = run(&[
        "enumerate",
        "--max-size",
        "2",
        "--m",
        "1,2",
        "--out",
        arg(&out_dir),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("56 spaces"));
    let files: Vec<_> = fs::read_dir(&out_dir).unwrap().collect();
    assert_eq!(files.len(), 112);
    for f in files {
        let path = f.unwrap().path();
        assert_eq!(
            run(&["check", arg(&path)]).status.code(),
            Some(0),
            "{}",
            path.display()
        );
    }
    assert_eq!(
        run(&["enumerate", "--max-size", "5"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["enumerate", "--max-size", "1", "--m", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dot_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k3.mdl", K3);
    let dual = dir.path().join("dual.mdl");
    run(&["dual", arg(&f), "-o", arg(&dual)]);
    let first = stdout(&run(&["dot", arg(&dual)]));
    let file = dir.path().join("out.dot");
    assert_eq!(
        run(&["dot", arg(&dual), "-o", arg(&file)]).status.code(),
        Some(0)
    );
    assert_eq!(fs::read_to_string(&file).unwrap(), first);
    assert_eq!(first.matches("label=\"RG,RH\"").count(), 3);
    assert_eq!(first.matches("style=dashed").count(), 2);
}
