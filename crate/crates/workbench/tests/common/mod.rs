#![allow(dead_code)]

pub mod agree;
pub mod oracle;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hkt_workbench::{corpus_dir, scene_files, Scene};

pub fn corpus() -> Vec<PathBuf> {
    scene_files(&corpus_dir()).expect("corpus directory")
}

pub fn scene(name: &str) -> Scene {
    Scene::load(&corpus_dir().join(format!("{name}.scene"))).expect("corpus scene loads")
}

pub fn hktw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hktw")).args(args).output().expect("run hktw")
}

pub fn hktw_path(args: &[&str], path: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hktw")).args(args).arg(path).output().expect("run hktw")
}
