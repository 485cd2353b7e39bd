use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _};
use clap::{Parser, Subcommand, ValueEnum};
use hkt_core::hermitian::LaplacianKind;
use hkt_core::hypercomplex::{
    hyperholomorphic_10, hyperholomorphic_real, killing_fields, killing_fields_10, obata_connection, parallel_fields,
    parallel_fields_10,
};
use hkt_workbench::report::num_vec;
use hkt_workbench::{corpus_dir, run_report, run_scenes, scene_files, RunOptions, Scene, Status, SuiteEntry};
use serde_json::json;

#[derive(Parser)]
#[command(name = "hktw", version, about = "Invariant hyperhermitian geometry workbench")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock time in the report meta section.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldKind {
    Hyperholo,
    Killing,
    Parallel,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full report for one scene.
    Check { scene: PathBuf },
    /// Property suite for one scene or the bundled corpus.
    Suite {
        scene: Option<PathBuf>,
        #[arg(long, conflicts_with = "scene")]
        corpus: bool,
        /// Run corpus scenes one after another.
        #[arg(long)]
        sequential: bool,
    },
    /// Harmonic space of a Laplacian on one bidegree.
    Harmonic {
        scene: PathBuf,
        #[arg(long)]
        kind: LaplacianKind,
        #[arg(long, value_parser = parse_bidegree)]
        bidegree: (usize, usize),
    },
    /// Special vector fields.
    Fields {
        scene: PathBuf,
        #[arg(long, value_enum)]
        kind: FieldKind,
    },
}

fn parse_bidegree(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let p = p.trim().parse().map_err(|_| format!("bad p in {s:?}"))?;
    let q = q.trim().parse().map_err(|_| format!("bad q in {s:?}"))?;
    Ok((p, q))
}

/// Input problems exit with 2, failed checks with 1.
enum Outcome {
    Pass,
    Fail,
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(p: &Path) -> anyhow::Result<Scene> {
    Scene::load(p).with_context(|| format!("scene {}", p.display()))
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let opts = RunOptions { timing: cli.timing };
    match &cli.cmd {
        Cmd::Check { scene } => {
            let r = run_report(&load(scene)?, opts);
            emit(cli, &if cli.format == Format::Json { r.to_json() } else { r.to_text() })?;
            Ok(if r.passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Cmd::Suite { scene, corpus, sequential } => {
            let paths = match (scene, corpus) {
                (Some(p), false) => vec![p.clone()],
                (None, true) => scene_files(&corpus_dir()).context("listing the corpus")?,
                _ => bail!("give a scene file or --corpus"),
            };
            let mut entries = Vec::new();
            for (p, r) in paths.iter().zip(run_scenes(&paths, opts, !sequential)) {
                let r = r.with_context(|| format!("scene {}", p.display()))?;
                entries.push(SuiteEntry::from_report(&r));
            }
            let failed = entries.iter().flat_map(|e| &e.checks).any(|c| c.status == Status::Fail);
            let out = match cli.format {
                Format::Json => json_text(&json!({ "scenes": entries, "passed": !failed })),
                Format::Text => {
                    let mut s = String::new();
                    for e in &entries {
                        s.push_str(&format!("scene {}\n", e.scene));
                        for c in &e.checks {
                            let note = c.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default();
                            s.push_str(&format!("  {:<8}{}{}\n", c.status.as_str(), c.name, note));
                        }
                    }
                    s.push_str(if failed { "suite failed\n" } else { "suite passed\n" });
                    s
                }
            };
            emit(cli, &out)?;
            Ok(if failed { Outcome::Fail } else { Outcome::Pass })
        }
        Cmd::Harmonic { scene, kind, bidegree: (p, q) } => {
            let s = load(scene)?;
            let Some(h) = s.hermitian() else {
                bail!("metric sections skipped: {}", s.limitation().map(|l| l.reason()).unwrap_or_default());
            };
            let space = h.harmonic_space(*kind, *p, *q).context("harmonic space")?;
            let real: Vec<_> = space.iter().map(|a| h.frame().to_real(a)).collect();
            let out = match cli.format {
                Format::Json => json_text(&json!({
                    "scene": s.name, "kind": kind, "bidegree": [p, q], "dim": real.len(), "basis": real,
                })),
                Format::Text => {
                    let mut t = format!("{} harmonic {} ({p},{q}) dim {}\n", s.name, kind, real.len());
                    for a in &real {
                        t.push_str(&format!("  {}\n", hkt_workbench::report::render_form(a)));
                    }
                    t
                }
            };
            emit(cli, &out)?;
            Ok(Outcome::Pass)
        }
        Cmd::Fields { scene, kind } => {
            let s = load(scene)?;
            let (alg, t) = (&s.algebra, &s.triple);
            let (name, real, ten) = match kind {
                FieldKind::Hyperholo => {
                    ("hyperholomorphic", hyperholomorphic_real(alg, t), hyperholomorphic_10(alg, t))
                }
                FieldKind::Killing => {
                    let Some(g) = s.metric.as_ref() else { bail!("killing fields need a metric") };
                    ("killing", killing_fields(alg, g), killing_fields_10(alg, t, g))
                }
                FieldKind::Parallel => {
                    let c = obata_connection(alg, t).context("Obata connection")?;
                    ("obata_parallel", parallel_fields(&c), parallel_fields_10(&c, t))
                }
            };
            let basis = |b: &Vec<Vec<_>>| b.iter().map(|v| num_vec(v)).collect::<Vec<_>>();
            let out = match cli.format {
                Format::Json => json_text(&json!({
                    "scene": s.name, "kind": name, "real": basis(&real), "type_10": basis(&ten),
                })),
                Format::Text => {
                    let mut t = format!("{} {name}\n  real dim {}\n  (1,0) dim {}\n", s.name, real.len(), ten.len());
                    for v in real.iter().chain(&ten) {
                        let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                        t.push_str(&format!("  [{}]\n", parts.join(", ")));
                    }
                    t
                }
            };
            emit(cli, &out)?;
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
