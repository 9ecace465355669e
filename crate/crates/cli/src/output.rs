//! The report every command produces, and its JSON, CSV and text renderings.

use std::collections::BTreeMap;

use cherednik::report::CheckResult;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    pub params: BTreeMap<String, Value>,
    pub format: Format,
    pub cache: bool,
    pub seed: u64,
    pub jobs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub status: &'static str,
    pub data: Value,
    pub witnesses: Vec<String>,
}

impl From<CheckResult> for Record {
    fn from(c: CheckResult) -> Self {
        Record { name: c.name, status: if c.passed { "pass" } else { "fail" }, data: c.data, witnesses: c.witnesses }
    }
}

impl Record {
    /// A computed value rather than a check; always passes.
    pub fn value(name: impl Into<String>, data: Value) -> Self {
        Record { name: name.into(), status: "pass", data, witnesses: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Rows for CSV output, header first.
pub type Table = Vec<Vec<String>>;

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub results: Vec<Record>,
    pub timing: Timing,
    #[serde(skip)]
    pub table: Option<Table>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(Record::passed)
    }

    pub fn render(&self) -> Result<String> {
        match self.config.format {
            Format::Json => serde_json::to_string_pretty(self).map(|s| s + "\n").map_err(|e| CliError::Io(e.to_string())),
            Format::Csv => self.render_csv(),
            Format::Text => Ok(self.render_text()),
        }
    }

    fn render_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        match &self.table {
            Some(rows) => {
                for row in rows {
                    w.write_record(row).map_err(io)?;
                }
            }
            None => {
                w.write_record(["name", "status", "witnesses"]).map_err(io)?;
                for r in &self.results {
                    w.write_record([r.name.as_str(), r.status, &r.witnesses.join("; ")]).map_err(io)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!("{} {}\n", r.status.to_uppercase(), r.name));
            if !r.data.is_null() {
                out.push_str(&format!("    {}\n", r.data));
            }
            for w in &r.witnesses {
                out.push_str(&format!("    witness: {w}\n"));
            }
        }
        out.push_str(&format!("elapsed: {} ms\n", self.timing.elapsed_ms));
        out
    }
}

/// Removes the timing block from rendered output, for comparing reruns.
pub fn strip_timing(rendered: &str) -> String {
    if let Ok(mut v) = serde_json::from_str::<Value>(rendered) {
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timing");
        }
        return v.to_string();
    }
    rendered.lines().filter(|l| !l.starts_with("elapsed: ")).collect::<Vec<_>>().join("\n")
}
