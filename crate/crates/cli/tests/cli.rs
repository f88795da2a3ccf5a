use std::path::{Path, PathBuf};
use std::process::Command;

use gsa_core::GradedStarAlgebra;
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    report: Value,
}

fn gsa(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_gsa")).current_dir(dir).args(args).output().expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    Run { code: out.status.code().expect("exit code"), report }
}

/// Runs a construction and writes its report to `name`.
fn construct(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--output", name]);
    assert_eq!(gsa(dir, &full).code, 0, "construct {args:?}");
    dir.join(name)
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn constructed_matrix_algebra_verifies() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), "m2.json", &["matrix", "--k", "2", "--tuple", "0,1"]);
    let r = gsa(dir.path(), &["verify", "m2.json", "--expect", "ok"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["status"], "ok");
    assert_eq!(r.report["format"], 1);
    assert_eq!(r.report["payload"]["dim"], 4);
}

#[test]
fn emitted_algebras_round_trip() {
    let dir = TempDir::new().unwrap();
    let ut2 = construct(dir.path(), "ut2.json", &["upper-triangular", "--k", "2"]);
    let sym = construct(dir.path(), "sym.json", &["matrix", "--k", "2", "--involution", "symplectic", "--alpha", "-1"]);
    let r = gsa(dir.path(), &["freerad", "ut2.json", "--q", "1", "--s", "2", "--output", "free.json"]);
    assert_eq!(r.code, 0);
    for path in [ut2, sym, dir.path().join("free.json")] {
        let doc = read(&path)["payload"]["algebra"].clone();
        let a = GradedStarAlgebra::from_json(&doc).unwrap();
        assert_eq!(a.to_json(), doc, "{}", path.display());
        assert_eq!(GradedStarAlgebra::from_json(&a.to_json()).unwrap(), a);
    }
}

#[test]
fn non_simple_algebra_is_reported_without_failing() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), "ut2.json", &["upper-triangular", "--k", "2"]);
    let r = gsa(dir.path(), &["simple", "ut2.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["status"], "violation");
    let witness = &r.report["payload"]["witness"];
    let dim = witness["dim"].as_u64().unwrap();
    assert!(dim > 0 && dim < 3);
    assert_eq!(gsa(dir.path(), &["simple", "ut2.json", "--expect", "ok"]).code, 1);
}

#[test]
fn structure_of_ut2() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), "ut2.json", &["upper-triangular", "--k", "2"]);
    let r = gsa(dir.path(), &["radical", "ut2.json"]);
    assert_eq!((r.report["payload"]["dim"].as_u64(), r.report["payload"]["nilpotency_degree"].as_u64()), (Some(1), Some(2)));
    let r = gsa(dir.path(), &["params", "ut2.json", "ut2.json", "--expect", "ok"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["payload"]["parameters"]["dims_gi"], serde_json::json!([1, 1, 0, 0]));
    assert_eq!(r.report["payload"]["parameters"]["nd"], 2);
}

#[test]
fn witness_is_not_an_identity() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), "ut2.json", &["upper-triangular", "--k", "2"]);
    let r = gsa(dir.path(), &["witness", "ut2.json", "ut2.json", "--mu", "1", "--output", "w.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(read(&dir.path().join("w.json"))["status"], "ok");
    let r = gsa(dir.path(), &["check-id", "ut2.json", "w.json"]);
    assert_eq!(r.report["status"], "violation");
    assert_eq!(r.report["payload"]["identity"], false);
    assert_eq!(gsa(dir.path(), &["check-id", "ut2.json", "w.json", "--expect", "ok"]).code, 1);
}

#[test]
fn trace_forms_and_cayley_hamilton_on_ut2() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), "ut2.json", &["upper-triangular", "--k", "2"]);
    let r = gsa(dir.path(), &["forms-check", "ut2.json", "ut2.json", "--expect", "ok"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["payload"]["report"]["holds"], true);
    let r = gsa(dir.path(), &["ch-fit", "ut2.json", "ut2.json", "--expect", "ok"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["payload"]["verified"], true);
}

#[test]
fn identity_space_counts_add_up() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), "m2.json", &["matrix", "--k", "2"]);
    let r = gsa(dir.path(), &["iddim", "m2.json", "--multidegree", "2,0,1,0"]);
    let p = &r.report["payload"];
    assert_eq!(p["identities"].as_u64().unwrap() + p["quotient"].as_u64().unwrap(), 6);
    assert_eq!(p["kernel"].as_array().unwrap().len() as u64, p["identities"].as_u64().unwrap());
}

#[test]
fn classification_is_certified() {
    let dir = TempDir::new().unwrap();
    let r = gsa(dir.path(), &["classify", "--q", "4", "--kmax", "1", "--expect", "ok"]);
    assert_eq!(r.code, 0);
    let list = r.report["payload"]["algebras"].as_array().unwrap();
    assert!(!list.is_empty());
    assert!(list.iter().all(|a| a["simplicity"]["verdict"] == "simple" && a["radical_dim"] == 0));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), "ut2.json", &["upper-triangular", "--k", "2"]);
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    let a = strip(gsa(dir.path(), &["witness", "ut2.json", "ut2.json", "--mu", "2"]).report);
    let b = strip(gsa(dir.path(), &["witness", "ut2.json", "ut2.json", "--mu", "2"]).report);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn exit_codes_for_caps_and_parse_errors() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
    let r = gsa(dir.path(), &["verify", "bad.json"]);
    assert_eq!((r.code, r.report["status"].as_str()), (3, Some("error")));
    assert_eq!(gsa(dir.path(), &["verify", "missing.json"]).code, 3);

    construct(dir.path(), "ut3.json", &["upper-triangular", "--k", "3"]);
    let r = gsa(dir.path(), &["ch-fit", "ut3.json", "ut3.json"]);
    assert_eq!((r.code, r.report["status"].as_str()), (2, Some("error")));
    let r = gsa(dir.path(), &["simple", "ut3.json", "--max-evals", "5"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.report["counters"]["max_evals"], 5);
}

#[test]
fn broken_decomposition_is_a_violation() {
    let dir = TempDir::new().unwrap();
    let ut2 = construct(dir.path(), "ut2.json", &["upper-triangular", "--k", "2"]);
    let mut doc = read(&ut2);
    let dec = &mut doc["payload"]["decomposition"];
    dec["nd"] = serde_json::json!(3);
    std::fs::write(dir.path().join("bad_dec.json"), doc.to_string()).unwrap();
    let r = gsa(dir.path(), &["decomp-verify", "ut2.json", "bad_dec.json"]);
    assert_eq!(r.report["status"], "violation");
    assert!(!r.report["payload"]["violations"].as_array().unwrap().is_empty());
}
