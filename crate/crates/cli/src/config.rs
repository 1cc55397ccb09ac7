//! Experiment configuration: one JSON file per run, validated up front.
//!
//! Seeds are mandatory in the file so reruns are reproducible by
//! construction; there is no wall-clock fallback anywhere. The full schema
//! is documented in `docs/config.md`.

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use matroid_limits::graphgen::GenSpec;
use matroid_limits::quotient::Norm;
use matroid_limits::rank::SetFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Convergence,
    ExpanderGap,
    Duality,
    Forests,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Convergence => "convergence",
            ExperimentKind::ExpanderGap => "expander-gap",
            ExperimentKind::Duality => "duality",
            ExperimentKind::Forests => "forests",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormChoice {
    Sup,
    L1,
}

impl NormChoice {
    pub fn to_norm(self) -> Norm {
        match self {
            NormChoice::Sup => Norm::Sup,
            NormChoice::L1 => Norm::L1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiChoice {
    Rho,
    Eta,
    CocycleRho,
}

impl PhiChoice {
    pub fn to_set_function(self) -> SetFunction {
        match self {
            PhiChoice::Rho => SetFunction::Rho,
            PhiChoice::Eta => SetFunction::Eta,
            PhiChoice::CocycleRho => SetFunction::CocycleRho,
        }
    }
}

/// Everything a run needs. Unknown keys are rejected so typos surface as
/// validation errors instead of silently falling back to defaults.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    /// Master seed; per-item seeds are derived by index.
    pub seed: u64,
    #[serde(default)]
    pub graphs: Vec<GenSpec>,
    /// Serialized planar maps (duality experiment), relative to the config
    /// file unless absolute.
    #[serde(default)]
    pub map_files: Vec<PathBuf>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub radii: Option<Vec<u32>>,
    #[serde(default)]
    pub trials: Option<u64>,
    #[serde(default)]
    pub norm: Option<NormChoice>,
    #[serde(default)]
    pub set_function: Option<PhiChoice>,
    /// Cap on exact quotient enumerations (counts all k^m colorings).
    #[serde(default)]
    pub budget: Option<u64>,
    /// Switches quotient profiles to seeded sampling with this many
    /// colorings per graph.
    #[serde(default)]
    pub colorings: Option<u64>,
    #[serde(default)]
    pub restarts: Option<u64>,
    /// Vertices per copy for the doubled side of the expander gap.
    #[serde(default)]
    pub part_size: Option<usize>,
    /// Vertex count of the expander side; defaults to both copies together.
    #[serde(default)]
    pub expander_size: Option<usize>,
    #[serde(default)]
    pub degree: Option<usize>,
    /// Explicit wired boundary, applied to every graph in the list.
    #[serde(default)]
    pub boundary: Option<Vec<u32>>,
    /// Wire each hyperbolic patch at its outer face instead of an explicit
    /// vertex list.
    #[serde(default)]
    pub wire_outer_face: bool,
    /// Convergence only: fail the run when the last consecutive Hausdorff
    /// distance exceeds the first.
    #[serde(default)]
    pub require_cauchy: bool,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Loads and validates; `path` anchors relative map file references.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut config: ExperimentConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        for f in &mut config.map_files {
            if f.is_relative() {
                *f = base.join(&*f);
            }
        }
        Ok(config)
    }

    pub fn validate(&self, requested: ExperimentKind) -> Result<()> {
        ensure!(
            self.experiment == requested,
            "config declares experiment '{}' but '{}' was requested",
            self.experiment.name(),
            requested.name()
        );
        if let Some(k) = self.k {
            ensure!((1..=12).contains(&k), "k must be between 1 and 12, got {k}");
        }
        if let Some(c) = self.colorings {
            ensure!(c >= 1, "colorings must be at least 1");
        }
        if let Some(r) = &self.radii {
            ensure!(!r.is_empty(), "radii must be nonempty when given");
        }
        for f in &self.map_files {
            ensure!(f.exists(), "map file does not exist: {}", f.display());
        }
        match self.experiment {
            ExperimentKind::Convergence => {
                ensure!(
                    self.graphs.len() >= 2,
                    "convergence needs at least two graphs to compare"
                );
            }
            ExperimentKind::ExpanderGap => {
                let part = self.part_size.unwrap_or(super::gap::DEFAULT_PART_SIZE);
                let degree = self.degree.unwrap_or(3);
                ensure!(part >= 4, "part_size must be at least 4, got {part}");
                ensure!(degree >= 3, "degree must be at least 3, got {degree}");
                ensure!(
                    part * degree % 2 == 0,
                    "part_size * degree must be even, got {part} * {degree}"
                );
                let expander = self.expander_size.unwrap_or(2 * part);
                ensure!(
                    expander * degree % 2 == 0,
                    "expander_size * degree must be even, got {expander} * {degree}"
                );
                ensure!(expander > degree, "expander_size must exceed the degree");
            }
            ExperimentKind::Duality => {
                ensure!(
                    !self.graphs.is_empty() || !self.map_files.is_empty(),
                    "duality needs graphs or map_files"
                );
            }
            ExperimentKind::Forests => {
                ensure!(!self.graphs.is_empty(), "forests needs at least one graph");
                if self.boundary.is_some() && self.wire_outer_face {
                    bail!("boundary and wire_outer_face are mutually exclusive");
                }
            }
        }
        Ok(())
    }
}

/// Short deterministic display name for a generated family instance.
pub fn spec_label(spec: &GenSpec) -> String {
    match spec {
        GenSpec::Cycle { n } => format!("cycle({n})"),
        GenSpec::Path { n } => format!("path({n})"),
        GenSpec::Grid { rows, cols } => format!("grid({rows}x{cols})"),
        GenSpec::Torus { rows, cols } => format!("torus({rows}x{cols})"),
        GenSpec::RandomRegular { n, degree, seed } => {
            format!("random_regular(n={n},d={degree},seed={seed})")
        }
        GenSpec::Doubled { base } => format!("doubled({})", spec_label(base)),
        GenSpec::HyperbolicPatch { p, q, layers } => format!("patch({p},{q},L{layers})"),
    }
}
