//! Machine-readable result tables: CSV with a metadata comment line, or JSON
//! with the same columns as arrays of records.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};

use crate::config::{Experiment, OutputFormat};

#[derive(Clone, Debug)]
pub enum Value {
    Int(i64),
    Real(f64),
    Str(String),
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            // 17 significant digits: full f64 round trip.
            Value::Real(v) => format!("{v:.16e}"),
            Value::Str(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Int(v) => serde_json::json!(v),
            Value::Real(v) => serde_json::json!(v),
            Value::Str(s) => serde_json::json!(s),
        }
    }
}

/// One result table: ordered metadata, a column header, rows, and trailing
/// summary entries (e.g. the termination reason of a truncated orbit).
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub trailer: Vec<(String, String)>,
}

/// Column names from static strings.
pub fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl Table {
    pub fn new(exp: &Experiment, columns: Vec<String>) -> Self {
        let meta = vec![
            ("tool".into(), "billiard".into()),
            ("version".into(), env!("CARGO_PKG_VERSION").into()),
            ("domain_hash".into(), exp.domain_hash.clone()),
            ("seed".into(), exp.seed.to_string()),
            ("steps".into(), exp.steps.to_string()),
            ("samples".into(), exp.samples.to_string()),
        ];
        Self {
            meta,
            columns,
            rows: Vec::new(),
            trailer: Vec::new(),
        }
    }

    pub fn push_trailer(&mut self, key: &str, value: impl ToString) {
        self.trailer.push((key.to_string(), value.to_string()));
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        let meta: Vec<String> = self.meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "# {}", meta.join(" "));
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        for (k, v) in &self.trailer {
            let _ = writeln!(out, "# {k}={v}");
        }
        out
    }

    fn render_json(&self) -> String {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::json!(v)))
            .collect();
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row.iter())
                    .map(|(c, v)| (c.clone(), v.json()))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let trailer: serde_json::Map<String, serde_json::Value> = self
            .trailer
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::json!(v)))
            .collect();
        let doc = serde_json::json!({
            "metadata": meta,
            "columns": self.columns,
            "rows": rows,
            "summary": trailer,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serialize table");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    /// Write to the experiment's output path, or stdout when none is set.
    pub fn emit(&self, exp: &Experiment) -> Result<()> {
        let text = self.render(exp.format);
        match &exp.out {
            Some(path) => write_file(path, &text),
            None => {
                std::io::stdout()
                    .write_all(text.as_bytes())
                    .context("write stdout")?;
                Ok(())
            }
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}
