use std::process::{Command, Output};

use serde_json::Value;

fn bicyclic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicyclic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn mul_outputs() {
    let o = bicyclic(&["mul", "(1,2,0)", "(1,3,1)"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "(1,4,0)"));
    let o = bicyclic(&["mul", "(0,0,0)", "(2,3,1)"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "(2,3,1)"));
    let o = bicyclic(&["mul", "( 2, 2, 1 )", "(2,2,0)"]);
    assert_eq!(stdout(&o).trim(), "(2,2,1)");
}

#[test]
fn mul_errors() {
    assert_eq!(code(&bicyclic(&["mul", "(1,2,0)", "(1,3,7)"])), 2);
    assert_eq!(code(&bicyclic(&["mul", "(1,-2,0)", "(1,3,0)"])), 2);
    assert_eq!(code(&bicyclic(&["mul", "(1,2,0)"])), 2);
    let o = bicyclic(&["mul", "(1,2,0)", "(1,3,1)", "--family", "0,2"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    let o = bicyclic(&["mul", "(0,2,2)", "(1,3,1)", "--family", "0,1,2"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "(0,4,2)"));
    let o = bicyclic(&["mul", "(9223372036854775807,0,0)", "(1,0,0)"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn endo_commands() {
    let o = bicyclic(&["endo", "compose", "a:2,1", "a:3,2"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "a:6,5"));
    let o = bicyclic(&["endo", "compose", "b:2,1", "b:3,2"]);
    assert_eq!(stdout(&o).trim(), "b:6,3");
    let o = bicyclic(&["endo", "apply", "b:3,2", "(1,0,1)"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "(5,2,0)"));
    let o = bicyclic(&["endo", "apply", "a:2,1", "(3,4,1)"]);
    assert_eq!(stdout(&o).trim(), "(7,9,1)");
    let o = bicyclic(&["endo", "classify", "--k", "2", "--level", "0", "--p", "1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "b:2,1"));
    let o = bicyclic(&["endo", "classify", "--k", "2", "--level", "1", "--p", "1"]);
    assert_eq!(stdout(&o).trim(), "a:2,1");
}

#[test]
fn endo_errors() {
    let o = bicyclic(&["endo", "classify", "--k", "2", "--level", "1", "--p", "2"]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("p exceeds k-1"), "{}", stderr(&o));
    let o = bicyclic(&["endo", "classify", "--k", "3", "--level", "0", "--p", "0"]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("not injective"));
    assert_eq!(code(&bicyclic(&["endo", "compose", "a:2,2", "a:3,2"])), 4);
    assert_eq!(code(&bicyclic(&["endo", "compose", "x:2,1", "a:3,2"])), 2);
    assert_eq!(code(&bicyclic(&["endo", "apply", "b:0,0", "(1,0,1)"])), 4);
    let o = bicyclic(&["endo", "compose", "a:2,1", "a:3,2", "--family", "0,1,2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn green_commands() {
    let o = bicyclic(&["green", "-r", "J", "a:2,1", "b:2,1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "related: false"));
    let o = bicyclic(&["green", "-r", "R", "a:2,1", "a:2,1"]);
    assert_eq!(stdout(&o).trim(), "related: true");
    let o = bicyclic(&["green", "-r", "L", "b:4,1", "b:4,3", "--mode", "search", "--kmax", "6"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "related: false (bound 6)"));
    let o = bicyclic(&["green", "-r", "L", "b:6,3", "b:6,3", "--mode", "search", "--kmax", "1"]);
    assert_eq!(stdout(&o), "related: true (bound 1)\nwitnesses: unit\n");
    assert_eq!(code(&bicyclic(&["green", "-r", "Q", "a:1,0", "a:1,0"])), 2);
    assert_eq!(
        code(&bicyclic(&["green", "-r", "R", "a:1,0", "a:1,0", "--family", "0"])),
        3
    );
}

/// Structural check of a ReportDocument.
fn validate_report(doc: &Value) -> Result<(), String> {
    let obj = doc.as_object().ok_or("report is not an object")?;
    let field = |k: &str| obj.get(k).ok_or(format!("missing {k}"));
    field("suite")?.as_str().ok_or("suite is not a string")?;
    let bounds = field("bounds")?.as_object().ok_or("bounds is not an object")?;
    for k in ["bound", "kmax", "search_kmax", "t_max", "symbolic_kmax"] {
        bounds.get(k).and_then(Value::as_i64).ok_or(format!("bounds.{k}"))?;
    }
    field("cases")?.as_u64().ok_or("cases")?;
    field("elapsed_ms")?.as_u64().ok_or("elapsed_ms")?;
    let failures = field("failures")?.as_array().ok_or("failures")?;
    for f in failures {
        for k in ["invariant", "inputs", "expected", "got"] {
            f.get(k).and_then(Value::as_str).ok_or(format!("failure.{k}"))?;
        }
    }
    let count = field("failure_count")?.as_u64().ok_or("failure_count")?;
    field("witnesses")?.as_array().ok_or("witnesses")?;
    field("cases_by_invariant")?.as_object().ok_or("cases_by_invariant")?;
    let pass = field("pass")?.as_bool().ok_or("pass")?;
    if pass != failures.is_empty() || pass != (count == 0) {
        return Err("pass disagrees with failures".into());
    }
    Ok(())
}

#[test]
fn verify_json_matches_schema_and_text_verdicts() {
    let o = bicyclic(&["verify", "--suite", "green_agreement", "--kmax", "6", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    validate_report(&doc).unwrap();
    assert_eq!(doc["suite"], "green_agreement");
    assert_eq!(doc["bounds"]["kmax"], 6);
    assert_eq!(doc["bounds"]["search_kmax"], 8);
    assert_eq!(doc["pass"], true);

    let text = bicyclic(&["verify", "--suite", "green_agreement", "--kmax", "6"]);
    assert_eq!(code(&text), 0);
    assert!(stdout(&text).starts_with("PASS green_agreement"));
}

#[test]
fn verify_smallest_semigroup_run() {
    let o = bicyclic(&["verify", "--suite", "semigroup_axioms", "--bound", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    validate_report(&doc).unwrap();
    assert_eq!(doc["cases_by_invariant"]["associativity"], 8);
}

#[test]
fn verify_all_passes_and_reports_every_suite() {
    let o = bicyclic(&["verify", "--suite", "all", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let docs: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let docs = docs.as_array().unwrap();
    assert_eq!(docs.len(), 12);
    for d in docs {
        validate_report(d).unwrap();
    }
    let text = bicyclic(&["verify"]);
    assert_eq!(code(&text), 0);
    let out = stdout(&text);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS ")).count(), 12);
    assert!(out.trim_end().ends_with("all 12 suites passed"));
}

#[test]
fn verify_failure_and_unknown_suite_exit_codes() {
    assert_eq!(code(&bicyclic(&["verify", "--suite", "bogus"])), 2);
    // kmax=0 leaves nothing to check, which counts as a failure
    let o = bicyclic(&["verify", "--suite", "idempotents", "--kmax", "0", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    validate_report(&doc).unwrap();
    assert_eq!(doc["pass"], false);
}

#[test]
fn export_cayley_formats() {
    let o = bicyclic(&["export-cayley", "--bound", "2", "--generators", "(0,1,0)", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph cayley {"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 18);
    assert!(dot.contains("n0 [label=\"(0,0,0)\"];"));

    let o = bicyclic(&["export-cayley", "--bound", "0", "--format", "dot"]);
    let dot = stdout(&o);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 0);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edges.csv");
    let o = bicyclic(&[
        "export-cayley",
        "--bound",
        "2",
        "-g",
        "(0,1,0)",
        "(1,0,0)",
        "--format",
        "csv",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("source,generator,target"));
    assert!(csv.contains("\"(0,0,0)\",\"(0,1,0)\",\"(0,1,0)\""));

    let missing = dir.path().join("no/such/dir/out.dot");
    let o = bicyclic(&["export-cayley", "--bound", "1", "-o", missing.to_str().unwrap()]);
    assert_eq!(code(&o), 5);
    assert_eq!(code(&bicyclic(&["export-cayley", "--bound", "1", "-g", "(0,1,5)"])), 2);
}
