//! Scene files, reports and the property suite for invariant hyperhermitian
//! structures on Lie algebras.

pub mod expect;
pub mod report;
pub mod scene;
pub mod suite;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use report::{CheckResult, Report, Status};
pub use scene::{Scene, SceneError};
pub use suite::{run_report, RunOptions};

/// The bundled corpus shipped next to this crate.
pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// `*.scene` files of a directory in file-name order.
pub fn scene_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "scene"))
        .collect();
    out.sort();
    Ok(out)
}

/// Golden report path beside a scene: `hopf.scene` → `hopf.report.json`.
pub fn golden_path(scene: &Path, ext: &str) -> PathBuf {
    scene.with_extension(format!("report.{ext}"))
}

/// Loads and reports every scene; results keep the input order either way.
pub fn run_scenes(paths: &[PathBuf], opts: RunOptions, concurrent: bool) -> Vec<Result<Report, SceneError>> {
    let one = |p: &PathBuf| Scene::load(p).map(|s| run_report(&s, opts));
    if concurrent {
        paths.par_iter().map(one).collect()
    } else {
        paths.iter().map(one).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub scene: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteEntry {
    pub fn from_report(r: &Report) -> Self {
        SuiteEntry { scene: r.scene.clone(), checks: r.checks.clone() }
    }
}
