use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chiwb")).args(args).output().unwrap()
}

fn run_json(name: &str, extra: &[&str]) -> (i32, Value, String) {
    let path = fixture(name);
    let mut args = vec!["run", path.to_str().unwrap(), "--format", "json"];
    args.extend_from_slice(extra);
    let out = run(&args);
    let text = String::from_utf8(out.stdout).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), doc, text)
}

fn results(doc: &Value) -> &Vec<Value> {
    assert_eq!(doc["version"], 1);
    doc["results"].as_array().unwrap()
}

fn find<'a>(doc: &'a Value, command: &str) -> &'a Value {
    results(doc)
        .iter()
        .find(|r| r["command"] == command)
        .unwrap_or_else(|| panic!("no result for `{command}`"))
}

#[test]
fn cusp_session_succeeds_with_chi_three() {
    let (code, doc, _) = run_json("cusp.chiwb", &[]);
    assert_eq!(code, 0);
    assert_eq!(results(&doc).len(), 12);
    assert!(results(&doc).iter().all(|r| r["status"] == "ok"));
    assert_eq!(find(&doc, "chi C T")["chi"], 3);
    assert_eq!(find(&doc, "chi C L")["chi"], 2);
    assert_eq!(find(&doc, "multiplicity C")["multiplicity"], 2);
    let fulton = find(&doc, "fulton C T points = [ (1: 0, 0) ]");
    assert_eq!((fulton["chi"].as_i64(), fulton["rhs"].as_i64()), (Some(3), Some(3)));
    assert_eq!(fulton["total_blowup_chi"], 1);
    assert_eq!(find(&doc, "fulton C L points = [ ]")["total_blowup_chi"], 0);
    let assert = find(&doc, "assert chi C T = 3");
    assert_eq!((assert["expected"].as_i64(), assert["actual"].as_i64()), (Some(3), Some(3)));
}

#[test]
fn chi_result_has_the_documented_keys_in_order() {
    let (_, doc, _) = run_json("cusp.chiwb", &[]);
    let keys: Vec<&str> = find(&doc, "chi C T").as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(&keys[..5], ["command", "status", "chi", "tor_lengths", "dims"]);
}

#[test]
fn syntax_error_gives_one_error_result_and_exit_one() {
    let (code, doc, _) = run_json("syntax_error.chiwb", &[]);
    assert_eq!(code, 1);
    let rs = results(&doc);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0]["status"], "error");
    assert!(rs[0]["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn false_assertion_exits_two() {
    let (code, doc, _) = run_json("false_assert.chiwb", &[]);
    assert_eq!(code, 2);
    let r = &results(&doc)[0];
    assert_eq!(r["status"], "assertion_failed");
    assert_eq!((r["expected"].as_i64(), r["actual"].as_i64()), (Some(2), Some(1)));
}

#[test]
fn engine_errors_are_embedded_and_exit_one() {
    let (code, doc, _) = run_json("engine_error.chiwb", &[]);
    assert_eq!(code, 1);
    let rs = results(&doc);
    assert_eq!(rs.len(), 2);
    assert_eq!(rs[0]["status"], "error");
    // later commands still run
    assert_eq!(rs[1]["status"], "ok");
    assert_eq!(rs[1]["length"], 1);
}

#[test]
fn empty_session_has_no_results() {
    let (code, _, text) = run_json("empty.chiwb", &[]);
    assert_eq!(code, 0);
    assert_eq!(text, "{\n  \"version\": 1,\n  \"results\": []\n}\n");
}

#[test]
fn base_ring_commands() {
    let (code, doc, _) = run_json("base.chiwb", &[]);
    assert_eq!(code, 0);
    let d = find(&doc, "diagonal I J");
    assert_eq!(d["chi_via_diagonal"], 1);
    assert_eq!(d["chi_direct"], 1);
    assert_eq!(d["e_values"], serde_json::json!([1, 0, 0]));
    let flat = |name: &str| find(&doc, &format!("flatcheck {name}"))["flat"].as_bool().unwrap();
    assert!(flat("Free"));
    assert!(!flat("Slope"));
    assert!(flat("Section"));
    assert_eq!(find(&doc, "flatcheck Slope")["fiber_dimension"], 1);
    assert_eq!(find(&doc, "flatcheck Slope")["expected_fiber_dimension"], 0);
}

#[test]
fn json_is_deterministic_for_a_fixed_seed() {
    for name in ["cusp.chiwb", "base.chiwb", "scan.chiwb"] {
        let (_, _, a) = run_json(name, &["--seed", "7"]);
        let (_, _, b) = run_json(name, &["--seed", "7"]);
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn scans_report_no_violations() {
    let (code, doc, _) = run_json("scan.chiwb", &[]);
    assert_eq!(code, 0);
    for r in results(&doc) {
        assert_eq!(r["status"], "ok");
        assert_eq!(r["violations"], 0);
        assert_eq!(r["count"], 5);
    }
}

#[test]
fn field_override_applies_to_rings() {
    let (code, doc, _) = run_json("cusp.chiwb", &["--field", "FF:32003"]);
    assert_eq!(code, 0);
    assert_eq!(find(&doc, "chi C T")["chi"], 3);
    let (code, doc, _) = run_json("scan.chiwb", &["--field", "QQ"]);
    assert_eq!(code, 0);
    assert_eq!(results(&doc)[0]["field"], "QQ");
}

#[test]
fn timing_is_opt_in() {
    let (_, doc, _) = run_json("cusp.chiwb", &[]);
    assert!(results(&doc).iter().all(|r| r.get("timing_ms").is_none()));
    let (_, doc, _) = run_json("cusp.chiwb", &["--timing"]);
    assert!(results(&doc).iter().all(|r| r["timing_ms"].is_u64()));
}

#[test]
fn tiny_budget_is_a_clean_error() {
    let (code, doc, _) = run_json("cusp.chiwb", &["--budget", "1"]);
    assert_eq!(code, 1);
    assert!(results(&doc)
        .iter()
        .any(|r| r["message"].as_str().is_some_and(|m| m.contains("budget"))));
}

#[test]
fn text_format_prints_one_block_per_command() {
    let path = fixture("cusp.chiwb");
    let out = run(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let headers: Vec<&str> = text.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(headers.len(), 12);
    assert_eq!(headers[0], "[1] chi C T");
    assert!(text.contains("  chi: 3\n"));
    assert_eq!(text.matches("\n\n").count(), 11);
}

#[test]
fn input_errors_exit_one() {
    let out = run(&["run", "/nonexistent/session.chiwb"]);
    assert_eq!(out.status.code(), Some(1));
    let path = fixture("cusp.chiwb");
    let out = run(&["run", path.to_str().unwrap(), "--field", "FF:4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mixed_fields_are_rejected() {
    let dir = std::env::temp_dir().join(format!("chiwb-mixed-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mixed.chiwb");
    std::fs::write(
        &path,
        "ring A = QQ[x,y];\nideal I = x;\nring B = FF(7)[x,y];\nideal J = y;\nchi I J;\nring C = QQ[x] base=y;\n",
    )
    .unwrap();
    let out = run(&["run", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rs = results(&doc);
    assert_eq!(rs.len(), 2);
    assert_eq!(rs[0]["message"], "ring mismatch");
    assert!(rs[1]["message"].as_str().unwrap().contains("prefix"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oversized_expansions_are_input_errors() {
    let (code, doc, _) = run_json("too_large.chiwb", &[]);
    assert_eq!(code, 1);
    let rs = results(&doc);
    assert_eq!(rs.len(), 2);
    assert_eq!(rs[0]["command"], "ideal Big = (x^1000)^1000");
    assert!(rs[0]["message"].as_str().unwrap().contains("too large"));
    assert_eq!(find(&doc, "chi C T")["chi"], 3);
}
