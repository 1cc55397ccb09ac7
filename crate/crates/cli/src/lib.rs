//! Library half of the experiment driver; the binary is a thin wrapper so
//! the config and runners stay unit-testable.

pub mod config;
pub mod convergence;
pub mod duality;
pub mod forests;
pub mod gap;
pub mod report;

use anyhow::{Context, Result};
use serde_json::json;
use std::path::Path;

use config::{ExperimentConfig, ExperimentKind};
use report::RunOutcome;

/// Runs the configured experiment, writes its artifacts plus a
/// `summary.json` into `out_dir`, and returns the outcome.
pub fn run_experiment(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunOutcome> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    let mut outcome = match cfg.experiment {
        ExperimentKind::Convergence => convergence::run(cfg, out_dir)?,
        ExperimentKind::ExpanderGap => gap::run(cfg, out_dir)?,
        ExperimentKind::Duality => duality::run(cfg, out_dir)?,
        ExperimentKind::Forests => forests::run(cfg, out_dir)?,
    };
    let artifact_names: Vec<String> = outcome
        .artifacts
        .iter()
        .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .collect();
    let summary = json!({
        "experiment": cfg.experiment.name(),
        "seed": cfg.seed,
        "violations": outcome.violations,
        "artifacts": artifact_names,
    });
    let path = report::write_json(out_dir, "summary.json", &summary)?;
    outcome.artifacts.push(path);
    Ok(outcome)
}

/// Applies the thread cap from `MATROID_LIMITS_THREADS`, when set.
pub fn apply_thread_cap() -> Result<()> {
    if let Ok(raw) = std::env::var("MATROID_LIMITS_THREADS") {
        let threads: usize = raw
            .trim()
            .parse()
            .with_context(|| format!("MATROID_LIMITS_THREADS must be a positive integer, got {raw:?}"))?;
        anyhow::ensure!(threads >= 1, "MATROID_LIMITS_THREADS must be at least 1");
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("installing the capped worker pool")?;
    }
    Ok(())
}
