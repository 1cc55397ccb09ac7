//! Artifact writing: CSV for scalar series, JSON for structured results.
//! Everything written here is a pure function of the config, so reruns
//! reproduce files byte for byte; no timestamps, no machine names.

use anyhow::{Context, Result};
use matroid_limits::{format_ratio, ratio_to_f64, Ratio};
use std::path::{Path, PathBuf};

pub struct RunOutcome {
    pub violations: Vec<String>,
    pub artifacts: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn new() -> Self {
        RunOutcome { violations: Vec::new(), artifacts: Vec::new() }
    }

    pub fn violation(&mut self, text: String) {
        println!("[violation] {text}");
        self.violations.push(text);
    }

    pub fn check(&mut self, ok: bool, text: String) {
        if ok {
            println!("[ok] {text}");
        } else {
            self.violation(text);
        }
    }
}

impl Default for RunOutcome {
    fn default() -> Self {
        Self::new()
    }
}

pub fn write_csv(
    out_dir: &Path,
    name: &str,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<PathBuf> {
    let mut text = String::new();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        text.push_str(&row.join(","));
        text.push('\n');
    }
    write_artifact(out_dir, name, &text)
}

pub fn write_json(out_dir: &Path, name: &str, value: &serde_json::Value) -> Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    write_artifact(out_dir, name, &text)
}

pub fn write_artifact(out_dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    let path = out_dir.join(name);
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// A rational rendered for CSV consumers: approximate and exact columns.
pub fn ratio_cells(r: &Ratio) -> (String, String) {
    (format!("{}", ratio_to_f64(r)), format_ratio(r))
}
