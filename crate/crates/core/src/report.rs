//! Output records for the command line: canonical JSON, a flat CSV table
//! and an aligned text rendering of the same data.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// How the run was invoked. Nothing time dependent goes here, so equal
/// command lines give byte-identical JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub command_line: Vec<String>,
    pub version: String,
}

impl Metadata {
    pub fn new(command_line: Vec<String>) -> Self {
        Metadata {
            command_line,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Rows of plain strings under fixed column names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(ToString::to_string).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (k, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if k > 0 {
                    s.push_str("  ");
                }
                let _ = write!(s, "{cell:<w$}");
            }
            s.trim_end().to_string()
        };
        let mut out = line(&self.columns);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}

/// One command's result.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub metadata: Metadata,
    /// `None` for commands that only compute; otherwise whether every
    /// check held.
    pub passed: Option<bool>,
    pub result: serde_json::Value,
    pub table: Table,
    pub summary: Vec<String>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    metadata: &'a Metadata,
    #[serde(skip_serializing_if = "Option::is_none")]
    passed: Option<bool>,
    result: &'a serde_json::Value,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let doc = JsonReport {
                    command: &self.command,
                    metadata: &self.metadata,
                    passed: self.passed,
                    result: &self.result,
                };
                let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.table.to_csv(),
            Format::Pretty => {
                let mut s = String::new();
                for line in &self.summary {
                    s.push_str(line);
                    s.push('\n');
                }
                if !self.table.rows.is_empty() {
                    if !self.summary.is_empty() {
                        s.push('\n');
                    }
                    s.push_str(&self.table.to_text());
                }
                if let Some(ok) = self.passed {
                    let _ = writeln!(s, "{}", if ok { "PASS" } else { "FAIL" });
                }
                Ok(s)
            }
        }
    }
}
