//! Report files: a deterministic CSV table, a JSON mirror with run
//! metadata, and two- or three-column plot data.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;

/// Whitespace-delimited columns for external plotting.
#[derive(Debug, Clone)]
pub struct PlotData {
    pub file_name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

/// Output of one suite before it is written.
#[derive(Debug, Clone)]
pub struct Report {
    pub csv: String,
    pub rows: Value,
    pub passed: bool,
    /// Exact rational arithmetic (as opposed to the float path).
    pub exact: bool,
    pub summary: Value,
    pub plots: Vec<PlotData>,
}

impl Report {
    pub fn from_rows<R: Serialize>(rows: &[R], passed: bool, exact: bool) -> Result<Self, CliError> {
        if rows.is_empty() {
            return Err(CliError::EmptyInput("no rows to report".into()));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r).map_err(|e| CliError::Config(format!("serializing row: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Config(format!("flushing CSV: {e}")))?;
        Ok(Self {
            csv: String::from_utf8(bytes).expect("CSV is UTF-8"),
            rows: serde_json::to_value(rows).expect("rows serialize"),
            passed,
            exact,
            summary: Value::Null,
            plots: Vec::new(),
        })
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Writes a plot file; an empty table is an error and leaves no file.
pub fn emit_plot_data(dir: &Path, plot: &PlotData) -> Result<PathBuf, CliError> {
    if plot.rows.is_empty() {
        return Err(CliError::EmptyInput(format!("{} has no rows", plot.file_name)));
    }
    let mut text = format!("# {}\n", plot.columns.join(" "));
    for row in &plot.rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:e}")).collect();
        text.push_str(&cells.join(" "));
        text.push('\n');
    }
    let path = dir.join(&plot.file_name);
    fs::write(&path, text).map_err(io_err(&path))?;
    Ok(path)
}

/// Writes `<stem>.csv`, `<stem>.json` and the plot files; returns their paths.
pub fn write_report(dir: &Path, stem: &str, report: &Report, metadata: Value) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let csv_path = dir.join(format!("{stem}.csv"));
    fs::write(&csv_path, &report.csv).map_err(io_err(&csv_path))?;
    let mut doc = metadata;
    doc["passed"] = json!(report.passed);
    doc["exact"] = json!(report.exact);
    doc["summary"] = report.summary.clone();
    doc["rows"] = report.rows.clone();
    let json_path = dir.join(format!("{stem}.json"));
    let text = serde_json::to_string_pretty(&doc).expect("JSON serializes");
    fs::write(&json_path, text + "\n").map_err(io_err(&json_path))?;
    let mut written = vec![csv_path, json_path];
    for plot in &report.plots {
        written.push(emit_plot_data(dir, plot)?);
    }
    Ok(written)
}
