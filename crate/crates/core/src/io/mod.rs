//! File formats: run configuration, response matrices, stored draws and
//! result tables.

mod config;
mod draws;
mod responses;
mod tables;

use std::path::Path;

use crate::error::{Error, Result};

pub use config::{parse_config, read_config, DataConfig, McmcConfig, ModelName, RunConfig};
pub use draws::{
    draws_file_name, format_draws, parse_draws, read_draws, read_draws_dir, write_draws,
    DRAWS_MAGIC,
};
pub use responses::{
    format_responses, format_truth_items, format_truth_theta, parse_responses, read_fixed_c,
    read_responses, write_responses,
};
pub use tables::{
    format_acceptance, format_curve, format_diagnostics, format_item_summaries, format_recovery,
    icc_curve,
};

/// Shortest decimal form that parses back to the same `f64`, switching to
/// exponent notation for very small or large magnitudes.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Writes `text` to `path`, creating parent directories as needed.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
