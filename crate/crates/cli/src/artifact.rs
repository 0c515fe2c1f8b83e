//! Self-describing CSV output.
//!
//! An artifact starts with `#`-prefixed lines holding the tool version, the
//! experiment settings and every scenario in TOML form, followed by one CSV
//! header row and the data rows. Nothing time- or host-dependent is written,
//! so identical inputs give byte-identical files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use noma_drn_core::model::ScenarioConfig;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub experiment: &'static str,
    /// `key = value` settings, written in order.
    pub settings: Vec<(String, String)>,
    pub scenarios: Vec<ScenarioConfig>,
    /// Free-form summary lines, such as a grid argmin.
    pub notes: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Formats an optional number; missing values become empty cells.
pub fn cell(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

impl Artifact {
    pub fn new(experiment: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            experiment,
            settings: Vec::new(),
            scenarios: Vec::new(),
            notes: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn setting(mut self, key: &str, value: impl ToString) -> Self {
        self.settings.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Cells of one column, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[idx].as_str()).collect())
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        writeln!(out, "# noma-drn {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "# experiment = \"{}\"", self.experiment)?;
        for (k, v) in &self.settings {
            writeln!(out, "# {k} = {v}")?;
        }
        for note in &self.notes {
            writeln!(out, "# {note}")?;
        }
        for sc in &self.scenarios {
            writeln!(out, "#")?;
            writeln!(out, "# [[scenario]]")?;
            for line in sc.to_toml_string().lines() {
                if line.is_empty() {
                    writeln!(out, "#")?;
                } else {
                    writeln!(out, "#   {line}")?;
                }
            }
        }
        let mut csv = csv::Writer::from_writer(&mut out);
        csv.write_record(&self.columns)?;
        for row in &self.rows {
            csv.write_record(row)?;
        }
        csv.flush()?;
        drop(csv);
        out.flush()?;
        Ok(())
    }

    pub fn write_to_path(&self, path: &Path) -> Result<(), CliError> {
        let wrap = |source| CliError::File {
            path: path.to_path_buf(),
            source,
        };
        let file = File::create(path).map_err(wrap)?;
        let mut buf = BufWriter::new(file);
        self.write(&mut buf)?;
        buf.flush().map_err(wrap)?;
        Ok(())
    }

    /// Number of rows with a non-empty `error` cell.
    pub fn failed_rows(&self) -> usize {
        self.column("error")
            .map(|c| c.iter().filter(|e| !e.is_empty()).count())
            .unwrap_or(0)
    }
}
