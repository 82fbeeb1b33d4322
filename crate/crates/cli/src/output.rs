//! Result tables, their CSV/JSON renderings, and run manifests.
//!
//! Floats render through Rust's shortest round-trip formatting, which is
//! deterministic; infinities become the strings "inf"/"-inf" so no NaN or
//! JSON-illegal number ever reaches a result file.

use std::fmt::Write as _;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Float(f64),
    Int(i64),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            // Shortest round-trip formatting; exponent form below 1e-4 keeps
            // joule-scale values readable.
            Cell::Float(x) if x.is_finite() => {
                if *x != 0.0 && x.abs() < 1e-4 {
                    format!("{x:e}")
                } else {
                    format!("{x}")
                }
            }
            Cell::Float(x) if x.is_infinite() && *x > 0.0 => "inf".into(),
            Cell::Float(x) if x.is_infinite() => "-inf".into(),
            Cell::Float(_) => "nan".into(),
            Cell::Int(i) => format!("{i}"),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Float(x) if x.is_finite() => serde_json::json!(x),
            Cell::Int(i) => serde_json::json!(i),
            other => serde_json::Value::String(other.render()),
        }
    }
}

/// A named table of results; the unit every experiment emits.
#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: Vec<&'static str>) -> Table {
        Table {
            name: name.into(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        fn escape(field: String) -> String {
            if field.contains([',', '"', '\n']) {
                format!("\"{}\"", field.replace('"', "\"\""))
            } else {
                field
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| escape(c.render())).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let object: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(col, cell)| (col.to_string(), cell.to_json()))
                    .collect();
                serde_json::Value::Object(object)
            })
            .collect();
        serde_json::json!({ "table": self.name, "rows": rows })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("table is JSON");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Reproducibility sidecar emitted next to every result file.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    /// SHA-256 of the canonical config JSON.
    pub config_sha256: String,
    pub seed: u64,
    pub workers: usize,
    pub tool_version: &'static str,
    pub duration_ms: u128,
    /// Wall-clock timestamp; the only field allowed to differ between
    /// reruns of the same configuration.
    pub timestamp_unix_ms: u128,
    pub summary: String,
}

pub fn config_hash(canonical_config_json: &str) -> String {
    let digest = Sha256::digest(canonical_config_json.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

impl RunManifest {
    pub fn new(
        canonical_config_json: &str,
        seed: u64,
        workers: usize,
        duration_ms: u128,
        summary: String,
    ) -> RunManifest {
        RunManifest {
            config_sha256: config_hash(canonical_config_json),
            seed,
            workers,
            tool_version: env!("CARGO_PKG_VERSION"),
            duration_ms,
            timestamp_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
            summary,
        }
    }

    /// Write `<out>.manifest.json` beside the result file.
    pub fn write_beside(&self, result_path: &Path) -> Result<()> {
        let mut path = result_path.as_os_str().to_owned();
        path.push(".manifest.json");
        let mut body = serde_json::to_string_pretty(self)?;
        body.push('\n');
        std::fs::write(std::path::PathBuf::from(path), body)?;
        Ok(())
    }
}
