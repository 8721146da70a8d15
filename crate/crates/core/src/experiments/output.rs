use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use super::report::Report;
use crate::error::Result;
use crate::nonlinear::{SimConfig, SimulationOutput};
use crate::spectral::snapshot::write_snapshot;
use crate::spectral::write_series_csv;

/// Environment variable naming the default output root.
pub const OUT_DIR_ENV: &str = "BQ_OUT_DIR";

/// Writes `<root>/<scenario>/<timestamp>/manifest.json` and `series.csv`; returns the run
/// directory.
pub fn write_report(report: &Report, root: &Path) -> Result<PathBuf> {
    let dir = root.join(&report.scenario).join(timestamp());
    fs::create_dir_all(&dir)?;
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(report)?)?;
    let file = fs::File::create(dir.join("series.csv"))?;
    write_series_csv(BufWriter::new(file), &report.series)?;
    Ok(dir)
}

/// Writes a simulation run as `<root>/simulate/<timestamp>/` with `manifest.json`
/// (configuration, data moments, summary), `series.csv` and `snapshot_<k>.bqsf` files.
pub fn write_simulation(config: &SimConfig, output: &SimulationOutput, root: &Path) -> Result<PathBuf> {
    let dir = root.join("simulate").join(timestamp());
    fs::create_dir_all(&dir)?;
    let manifest = serde_json::json!({
        "config": config,
        "moments": output.moments,
        "summary": output.summary,
        "snapshots": output.snapshots.iter().map(|(t, _)| t).collect::<Vec<_>>(),
    });
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;
    let file = fs::File::create(dir.join("series.csv"))?;
    write_series_csv(BufWriter::new(file), &output.series)?;
    for (k, (_, field)) in output.snapshots.iter().enumerate() {
        let file = fs::File::create(dir.join(format!("snapshot_{k:04}.bqsf")))?;
        write_snapshot(BufWriter::new(file), field)?;
    }
    Ok(dir)
}

fn timestamp() -> String {
    chrono::Utc::now().format("%Y%m%dT%H%M%S%.3fZ").to_string()
}
