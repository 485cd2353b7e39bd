//! Byte-exact comparison of corpus reports against the files beside each
//! scene. Run with `HKTW_BLESS=1` to rewrite them.

mod common;

use std::fs;

use hkt_workbench::{golden_path, Report};

fn compare(ext: &str, args: &[&str]) {
    let bless = std::env::var_os("HKTW_BLESS").is_some();
    let mut mismatched = Vec::new();
    for scene in common::corpus() {
        let mut full = vec!["check"];
        full.extend_from_slice(args);
        let out = common::hktw_path(&full, &scene);
        assert_eq!(out.status.code(), Some(0), "{}: {}", scene.display(), String::from_utf8_lossy(&out.stderr));
        let golden = golden_path(&scene, ext);
        if bless {
            fs::write(&golden, &out.stdout).unwrap();
            continue;
        }
        let want = fs::read(&golden).unwrap_or_else(|_| panic!("missing golden {}", golden.display()));
        if want != out.stdout {
            mismatched.push(golden.display().to_string());
        }
    }
    assert!(mismatched.is_empty(), "reports differ from golden files: {mismatched:?}");
}

#[test]
fn json_reports_match_golden() {
    compare("json", &["--format", "json"]);
}

#[test]
fn text_reports_match_golden() {
    compare("txt", &["--format", "text"]);
}

#[test]
fn golden_json_round_trips() {
    for scene in common::corpus() {
        let text = fs::read_to_string(golden_path(&scene, "json")).unwrap();
        let r = Report::from_json(&text).unwrap();
        assert_eq!(r.to_json(), text, "{}", scene.display());
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }
}

#[test]
fn text_is_rendered_from_json() {
    for scene in common::corpus() {
        let r = Report::from_json(&fs::read_to_string(golden_path(&scene, "json")).unwrap()).unwrap();
        assert_eq!(r.to_text(), fs::read_to_string(golden_path(&scene, "txt")).unwrap());
    }
}
