//! Sweep configuration, the task runner behind the `axb` binary, and the
//! CSV/JSON artifacts it writes.
//!
//! CSV files follow RFC 4180 (header row, CRLF line ends) with every number
//! printed to 17 significant digits. JSON reports carry the schema version,
//! a config echo, `git describe`, wall-clock time, per-check pass flags and
//! the list of failed checks.

pub mod cli;
mod config;
mod run;
pub mod suites;

pub use config::{parse_grid, Format, ProfileChoice, SweepConfig, Task};
pub use run::{execute, exit_code_for, run, Artifact, Computed, RunOutcome, EXIT_FAILED, EXIT_INVALID, EXIT_NUMERICAL, EXIT_OK};
pub use suites::Check;

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: &str = "1.0.0";

pub fn report_schema_version() -> &'static str {
    REPORT_SCHEMA_VERSION
}

/// A rectangular numeric table with named columns.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    /// RFC 4180 text; numbers in `{:.16e}` form.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.columns.iter().map(|c| csv_field(c)).collect();
        out.push_str(&header.join(","));
        out.push_str("\r\n");
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
            out.push_str(&cells.join(","));
            out.push_str("\r\n");
        }
        out
    }
}

pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\r', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `git describe --always --dirty` of the working directory, or `"unknown"`.
pub fn git_describe() -> String {
    std::process::Command::new("git")
        .args(["describe", "--always", "--dirty"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["R", "a,b"]);
        t.rows.push(vec![0.1, -2.0]);
        t.rows.push(vec![f64::NAN, f64::INFINITY]);
        let csv = t.to_csv();
        assert_eq!(csv, "R,\"a,b\"\r\n1.0000000000000001e-1,-2.0000000000000000e0\r\nNaN,inf\r\n");
        let back: f64 = "1.0000000000000001e-1".parse().unwrap();
        assert_eq!(back, 0.1);
    }

    #[test]
    fn schema_version_is_semver() {
        let parts: Vec<u32> = report_schema_version().split('.').map(|p| p.parse().unwrap()).collect();
        assert_eq!(parts.len(), 3);
        assert_eq!(report_schema_version(), "1.0.0");
    }
}
