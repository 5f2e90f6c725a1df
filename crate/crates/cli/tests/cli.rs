use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> String {
    format!("{}/../../data/{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catkernel")).args(args).env_remove("CATKERNEL_MAX_MS").output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    assert_eq!(doc["schema"], 1);
    (out.status.code().unwrap(), doc)
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("catkernel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn validate_a_zoo_file() {
    let (code, doc) = json(&["validate", &data("zoo/walking_arrow.catspec")]);
    assert_eq!(code, 0);
    assert_eq!((doc["objects"].as_u64(), doc["morphisms"].as_u64()), (Some(2), Some(3)));
}

#[test]
fn wrong_annotation_is_a_counterexample() {
    let p = scratch("wrong.catspec", "# expect terminal=false\nobject a\n");
    let (code, doc) = json(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(doc["annotation_mismatches"][0], "terminal");
}

#[test]
fn malformed_input_exits_2() {
    let p = scratch("bad.catspec", "object a\nmorphism f : a -> nowhere\n");
    assert_eq!(run(&["validate", p.to_str().unwrap()]).status.code(), Some(2));
    let p = scratch("garbage.catspec", "objekt a\n");
    let out = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn unknown_flags_are_rejected() {
    assert_eq!(run(&["analyze", "zoo:one", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["laws"]).status.code(), Some(2));
    assert_eq!(run(&["monad", "--monad", "powerset"]).status.code(), Some(2));
}

#[test]
fn product_suite_on_finset3() {
    let (code, doc) = json(&["laws", "--suite", "product", "--max-size", "3"]);
    assert_eq!(code, 0);
    let entries = doc["entries"].as_array().unwrap();
    // the sheet has no p10, p17 or p18
    for label in (1..=19).filter(|i| ![10, 17, 18].contains(i)).map(|i| format!("p{i}")) {
        let e = entries.iter().find(|e| e["label"] == label.as_str()).unwrap_or_else(|| panic!("{label}"));
        assert_eq!(e["status"], "pass", "{e}");
        assert!(e["checked"].as_u64().unwrap() > 0);
        assert!(e.get("counterexample").is_none());
    }
}

#[test]
fn monad_report_for_maybe() {
    let (code, doc) = json(&["monad", "--monad", "maybe", "--max-size", "3"]);
    assert_eq!(code, 0);
    let census: Vec<u64> = doc["census"].as_array().unwrap().iter().map(|r| r["algebras"].as_u64().unwrap()).collect();
    assert_eq!(census, [0, 1, 2, 3]);
    assert_eq!(doc["em_terminal"]["agrees_with_search"], true);
    assert!(doc["conjecture_probe"].as_array().unwrap().len() >= 6);
    assert!(doc["external_exponents"].as_array().unwrap().iter().all(|r| r["exact"] == true));
}

#[test]
fn slice_over_one_object() {
    let (code, doc) = json(&["slice", "finset:3", "--base", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["terminal"], true);
    assert_eq!(doc["products_valid"], doc["product_pairs"]);
    assert_eq!(run(&["slice", "finset:2", "--base", "9"]).status.code(), Some(2));
}

#[test]
fn fibration_profiles() {
    let (code, doc) = json(&["fib", &data("fib/fork.catspec"), &data("zoo/walking_arrow.catspec")]);
    assert_eq!(code, 0);
    assert_eq!((doc["fibration"].as_bool(), doc["fibred_terminal"].as_bool()), (Some(true), Some(false)));
    assert_eq!(doc["products"]["beck_chevalley"], "unchecked");
    let (_, doc) = json(&["fib", "--codomain", "finset:2"]);
    assert_eq!(doc["fibration"], false);
    assert!(doc["missing_lifting"].is_array());
    let (_, doc) = json(&["fib", "--predicates", "2"]);
    assert_eq!(doc["split"], true);
    assert!(doc["generic_objects"].as_array().unwrap().iter().any(|g| g["generic"] == true && g["omega"] == "2"));
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [
        &["--json", "analyze", "finset:2"][..],
        &["--json", "limits", "zoo:square"],
        &["--json", "slice", "zoo:walking_arrow"],
        &["--json", "monad", "--monad", "writer:c2", "--max-size", "2"],
        &["--json", "laws", "--suite", "strength", "--max-size", "2"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn text_mode_is_a_summary() {
    let out = run(&["zoo"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "schema: 1"));
    assert!(text.lines().any(|l| l == "entries: 8 entries"));
}

#[test]
fn time_budget() {
    let out = Command::new(env!("CARGO_BIN_EXE_catkernel")).args(["zoo"]).env("CATKERNEL_MAX_MS", "soon").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // a zero budget stops each law before its first binding
    let out = Command::new(env!("CARGO_BIN_EXE_catkernel"))
        .args(["--json", "laws", "--suite", "assoc", "--max-size", "3"])
        .env("CATKERNEL_MAX_MS", "0")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["entries"].as_array().unwrap().iter().all(|e| e["status"] == "skipped" || e["checked"].as_u64() <= Some(1)));
}
