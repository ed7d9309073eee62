use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn doc(name: &str) -> PathBuf {
    root().join("docs").join(name)
}

fn rulealg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rulealg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = rulealg(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out).trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    serde_json::from_str(&ok(&a)).expect("valid JSON")
}

#[test]
fn compose_vertex_rules() {
    assert_eq!(ok(&["compose", "a", "adag"]), "a⊎a† + d_e");
    assert_eq!(ok(&["compose", "a", "adag", "--type", "dpo"]), "a⊎a† + r_∅");
    assert_eq!(ok(&["compose", "a", "adag", "--type", "dpo", "--nontrivial"]), "r_∅");
    assert_eq!(ok(&["commutator", "a", "adag", "--type", "spoab"]), "r_∅");
}

#[test]
fn reduce_drops_impossible_terms() {
    assert_eq!(ok(&["reduce", "--type", "dpo", "a ⊛ L"]), "0");
    let j = json(&["reduce", "--type", "dpo", "a ⊛ L"]);
    assert_eq!(j["terms"], Value::Array(vec![]));
}

#[test]
fn hopf_commands() {
    assert_eq!(ok(&["coproduct", "a"]), "(r_∅ ⊗ a) + (a ⊗ r_∅)");
    assert_eq!(ok(&["antipode", "a"]), "-a");
    assert_eq!(ok(&["dagger", "adag"]), "a");
    assert_eq!(ok(&["normal-order", "pbw", "a*adag"]), "a * a†");
}

#[test]
fn normal_orders() {
    assert_eq!(ok(&["normal-order", "vertex", "a *[dpo] adag"]), "a†*a + r_∅");
    assert_eq!(ok(&["normal-order", "hw", "d(1,2,1) * d(0,1,0)"]), "d(1,3,1)");
    assert_eq!(rulealg(&["normal-order", "vertex", "l"]).status.code(), Some(2));
}

#[test]
fn verify_vertex_table() {
    let out = rulealg(&["verify", "vertex"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("ok: 9 cells, 0 mismatches"));
    let j = json(&["verify", "vertex", "--type", "all"]);
    assert_eq!(j["passed"], true);
    assert_eq!(j["reports"].as_array().unwrap().len(), 4);
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["compose", "a", "bogus"][..],
        &["compose", "a", "(adag"],
        &["verify", "nosuch"],
        &["compose", "a*adag", "a", "--type", "dpo"],
        &["run", "/nonexistent/file.rdl"],
    ] {
        let out = rulealg(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let err = String::from_utf8(rulealg(&["compose", "a", "bogus"]).stderr).unwrap();
    assert!(err.starts_with("error[E001] at 1:1"), "{err}");
}

#[test]
fn definitions_file_and_run() {
    let f = doc("vertex.rdl");
    assert_eq!(
        ok(&["--file", f.to_str().unwrap(), "commutator", "del", "new", "--type", "dpo"]),
        "r_∅"
    );
    let text = ok(&["run", f.to_str().unwrap()]);
    assert_eq!(text.lines().nth(1), Some("[del, new][dpo] = r_∅"));
    assert_eq!(text.lines().nth(3), Some("keep *[dpo] keep = I^⊎2 + I"));
}

#[test]
fn export_dot() {
    let f = doc("vertex.rdl");
    let dot = ok(&["-f", f.to_str().unwrap(), "export-dot", "keep"]);
    assert!(dot.starts_with("digraph \"keep\""), "{dot}");
    let dot = ok(&["export-dot", "a*adag"]);
    assert_eq!(dot.matches("digraph").count(), 2);
}

fn corpus_invocations() -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = [
        &["compose", "a", "adag"][..],
        &["compose", "e", "edag", "--type", "spoa"],
        &["commutator", "l", "ldag", "--type", "spob"],
        &["coproduct", "a*adag"],
        &["antipode", "d(1,1,1)"],
        &["normal-order", "hw", "hw(2,2)"],
        &["normal-order", "vertex", "I *[dpo] I"],
        &["normal-order", "pbw", "a*adag*a"],
        &["verify", "vertex"],
        &["export-dot", "a"],
    ]
    .iter()
    .map(|a| a.iter().map(|s| s.to_string()).collect())
    .collect();
    for name in ["vertex.rdl", "edges.rdl", "diagram.rdl", "hw.rdl"] {
        v.push(vec!["run".into(), doc(name).to_string_lossy().into_owned()]);
    }
    v
}

#[test]
fn json_is_deterministic_and_matches_schema() {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(root().join("schema/output.schema.json")).unwrap()).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    for args in corpus_invocations() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let mut a = vec!["--json"];
        a.extend_from_slice(&args);
        let first = ok(&a);
        assert_eq!(first, ok(&a), "{args:?} differs between runs");
        let value: Value = serde_json::from_str(&first).unwrap();
        let msgs: Vec<String> = match validator.validate(&value) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
        };
        assert!(msgs.is_empty(), "{args:?} violates the schema: {msgs:?}");
    }
}
