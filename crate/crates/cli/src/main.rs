use anyhow::Result;
use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

use matroid_limits_cli::config::{ExperimentConfig, ExperimentKind};
use matroid_limits_cli::{apply_thread_cap, run_experiment};

/// Reproducible experiments over exact matroid rank profiles: quotient
/// convergence, expander gaps, planar duality audits, and invasion forests.
#[derive(Parser)]
#[command(name = "matroid-limits", version, arg_required_else_help = true)]
struct Cli {
    /// Which experiment to run; must match the config file.
    #[arg(value_enum)]
    experiment: ExperimentKind,
    /// JSON experiment configuration (schema in docs/config.md).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the seed from the config file.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; defaults to the config's `out`, then `./out`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> Result<usize> {
    apply_thread_cap()?;
    let mut config = ExperimentConfig::load(&cli.config)?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = cli.out {
        config.out = Some(out);
    }
    config.validate(cli.experiment)?;
    let out_dir = config.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    let outcome = run_experiment(&config, &out_dir)?;
    println!(
        "{}: {} violations, {} artifacts in {}",
        config.experiment.name(),
        outcome.violations.len(),
        outcome.artifacts.len(),
        out_dir.display()
    );
    Ok(outcome.violations.len())
}
