use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use crate::numerics::ToleranceConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
    Markdown,
    Plain,
}

/// Provenance record written next to every file output and embedded in JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub artifact_version: String,
    pub timestamp: String,
    pub tolerance_config: ToleranceConfig,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, cfg: &ToleranceConfig) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            tolerance_config: *cfg,
        }
    }
}

/// What a command produced, before it is rendered in a particular format.
pub struct Output {
    /// Column names; `None` for headerless grids such as a generated square.
    pub headers: Option<Vec<String>>,
    pub rows: Vec<Vec<String>>,
    /// Replaces the whitespace-aligned default in plain format.
    pub plain: Option<String>,
    pub data: serde_json::Value,
}

impl Output {
    pub fn render(&self, format: OutputFormat, manifest: &RunManifest) -> String {
        match format {
            OutputFormat::Csv => self.csv(),
            OutputFormat::Markdown => self.markdown(),
            OutputFormat::Plain => self.plain.clone().unwrap_or_else(|| self.plain_table()),
            OutputFormat::Json => {
                let doc = serde_json::json!({ "manifest": manifest, "data": self.data });
                let mut s = serde_json::to_string_pretty(&doc).expect("json value serializes");
                s.push('\n');
                s
            }
        }
    }

    fn csv(&self) -> String {
        let mut s = String::new();
        for line in self.headers.iter().chain(&self.rows) {
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    fn markdown(&self) -> String {
        let cols = self
            .headers
            .as_ref()
            .map(Vec::len)
            .or_else(|| self.rows.first().map(Vec::len))
            .unwrap_or(0);
        let blank = vec![String::new(); cols];
        let header = self.headers.as_ref().unwrap_or(&blank);
        let mut s = String::new();
        let _ = writeln!(s, "| {} |", header.join(" | "));
        let _ = writeln!(s, "|{}", "---|".repeat(cols));
        for row in &self.rows {
            let _ = writeln!(s, "| {} |", row.join(" | "));
        }
        s
    }

    fn plain_table(&self) -> String {
        let mut s = String::new();
        let lines: Vec<&Vec<String>> = self.headers.iter().chain(&self.rows).collect();
        let cols = lines.iter().map(|l| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| lines.iter().filter_map(|l| l.get(c)).map(String::len).max().unwrap_or(0))
            .collect();
        for line in lines {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            let _ = writeln!(s, "{}", cells.join("  "));
        }
        s
    }
}
