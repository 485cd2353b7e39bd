mod common;

use std::path::{Path, PathBuf};

use hkt_workbench::{corpus_dir, Report, Status};
use serde_json::{json, Value};
use tempfile::TempDir;

fn torus() -> Value {
    serde_json::from_str(&std::fs::read_to_string(corpus_dir().join("torus4.scene")).unwrap()).unwrap()
}

fn write(dir: &TempDir, name: &str, scene: &Value) -> PathBuf {
    let p = dir.path().join(format!("{name}.scene"));
    std::fs::write(&p, serde_json::to_string_pretty(scene).unwrap()).unwrap();
    p
}

fn check(path: &Path) -> (Option<i32>, String, String) {
    let out = common::hktw_path(&["check"], path);
    (out.status.code(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn report(stdout: &str) -> Report {
    Report::from_json(stdout).unwrap()
}

fn status(r: &Report, name: &str) -> Status {
    r.checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no check {name}")).status
}

#[test]
fn corpus_scene_exits_zero() {
    let (code, out, _) = check(&corpus_dir().join("torus4.scene"));
    assert_eq!(code, Some(0));
    assert!(report(&out).passed());
}

#[test]
fn bad_quaternion_relation_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let mut s = torus();
    s["J"] = s["I"].clone();
    let (code, out, err) = check(&write(&dir, "bad_j", &s));
    assert_eq!(code, Some(2));
    assert!(out.is_empty());
    assert!(err.contains("quaternion"), "{err}");
}

#[test]
fn jacobi_violation_is_reported() {
    let dir = TempDir::new().unwrap();
    let mut s = torus();
    s["brackets"] = json!([[1, 2, 3, "1"], [2, 3, 4, "1"], [3, 4, 1, "1"]]);
    let (code, _, err) = check(&write(&dir, "jacobi", &s));
    assert_eq!(code, Some(2));
    assert!(err.contains("Jacobi"), "{err}");
}

#[test]
fn incompatible_metric_is_reported() {
    let dir = TempDir::new().unwrap();
    let mut s = torus();
    s["metric"][0][0] = json!("2");
    let (code, _, err) = check(&write(&dir, "metric", &s));
    assert_eq!(code, Some(2));
    assert!(err.contains("compatibility"), "{err}");
}

#[test]
fn malformed_input_is_reported() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("broken.scene");
    std::fs::write(&p, "{ \"name\": ").unwrap();
    assert_eq!(check(&p).0, Some(2));
    let mut s = torus();
    s["colour"] = json!("blue");
    assert_eq!(check(&write(&dir, "unknown_key", &s)).0, Some(2));
    let mut s = torus();
    s["dim"] = json!(6);
    assert_eq!(check(&write(&dir, "dim6", &s)).0, Some(2));
    assert_eq!(check(&dir.path().join("missing.scene")).0, Some(2));
}

#[test]
fn failing_expectation_exits_one() {
    let dir = TempDir::new().unwrap();
    let mut s = torus();
    s["metadata"]["expect"] = json!([{"check": "harmonic", "kind": "del", "bidegree": [1, 0], "dim": 3}]);
    let (code, out, _) = check(&write(&dir, "wrong", &s));
    assert_eq!(code, Some(1));
    let r = report(&out);
    assert_eq!(status(&r, "expect harmonic del (1,0)"), Status::Fail);
    assert_eq!(r.checks.iter().filter(|c| c.status == Status::Fail).count(), 1);
}

#[test]
fn missing_metric_disables_metric_sections() {
    let dir = TempDir::new().unwrap();
    let mut s = torus();
    s.as_object_mut().unwrap().remove("metric");
    s["metadata"] = json!({});
    let (code, out, _) = check(&write(&dir, "no_metric", &s));
    assert_eq!(code, Some(0));
    let r = report(&out);
    assert_eq!(r.classification.metric, "skipped: no metric");
    assert!(r.classification.hermitian.is_none());
    assert_eq!(status(&r, "lee"), Status::Skipped);
    assert_eq!(status(&r, "parallel_obata"), Status::Pass);
    assert!(r.dimensions.iter().all(|d| d.dim.is_none()));
}

#[test]
fn non_integrable_scene_is_accepted() {
    let dir = TempDir::new().unwrap();
    let mut s = torus();
    s["brackets"] = json!([[1, 2, 3, "1"]]);
    s["metadata"] = json!({});
    let (code, out, _) = check(&write(&dir, "h3", &s));
    assert_eq!(code, Some(0));
    let r = report(&out);
    assert!(!r.classification.hypercomplex.integrable);
    assert!(r.classification.metric.starts_with("skipped: not integrable (N_"), "{}", r.classification.metric);
    assert!(r.checks.iter().all(|c| c.status != Status::Fail));
}

#[test]
fn non_unimodular_scene_is_accepted() {
    let dir = TempDir::new().unwrap();
    let mut s = torus();
    s["brackets"] = json!([[4, 1, 1, "1"], [4, 2, 2, "1"], [4, 3, 3, "1"]]);
    s["metadata"] = json!({});
    let (code, out, _) = check(&write(&dir, "hyperbolic", &s));
    assert_eq!(code, Some(0));
    let r = report(&out);
    assert!(r.classification.hypercomplex.integrable);
    assert!(!r.classification.lie.unimodular);
    assert_eq!(r.classification.metric, "skipped: not unimodular");
}

#[test]
fn hkt_only_checks_are_skipped_without_hkt() {
    let out = common::hktw_path(&["suite"], &corpus_dir().join("nonhkt_nil12.scene"));
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["scenes"][0]["checks"].as_array().unwrap();
    let hkt = checks.iter().find(|c| c["name"] == "hkt_identities").unwrap();
    assert_eq!(hkt["status"], "skipped");
    assert_eq!(hkt["note"], "hypothesis unmet: HKT");
    assert_eq!(v["passed"], true);
}

#[test]
fn harmonic_subcommand() {
    let scene = corpus_dir().join("torus4.scene");
    let out = common::hktw(&["harmonic", scene.to_str().unwrap(), "--kind", "del", "--bidegree", "1,0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 2);
    let bad = common::hktw(&["harmonic", scene.to_str().unwrap(), "--kind", "del", "--bidegree", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn fields_subcommand() {
    let scene = corpus_dir().join("balanced_hkt_nil8.scene");
    let out = common::hktw(&["fields", scene.to_str().unwrap(), "--kind", "hyperholo"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["real"].as_array().unwrap().len(), 4);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let dest = dir.path().join("r.json");
    let scene = corpus_dir().join("hopf.scene");
    let out = common::hktw(&["check", scene.to_str().unwrap(), "--out", dest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let golden = std::fs::read_to_string(corpus_dir().join("hopf.report.json")).unwrap();
    assert_eq!(std::fs::read_to_string(dest).unwrap(), golden);
}

#[test]
fn timing_is_opt_in() {
    let scene = corpus_dir().join("torus4.scene");
    let plain = report(&String::from_utf8(common::hktw_path(&["check"], &scene).stdout).unwrap());
    assert!(plain.meta.timing_ms.is_none());
    let timed = report(&String::from_utf8(common::hktw_path(&["check", "--timing"], &scene).stdout).unwrap());
    assert!(timed.meta.timing_ms.is_some());
    assert_eq!(timed.without_timing(), plain);
}
