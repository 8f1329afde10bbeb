//! Record sets shared by the table, CSV and JSON renderers.

use std::io::Write;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::Value;

use nlci::verify::TrialReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// A value together with the operation that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub value: Value,
    pub op: &'static str,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub inputs: Value,
}

impl Cell {
    pub fn new(value: impl Into<Value>, op: &'static str, inputs: Value) -> Self {
        Self {
            value: value.into(),
            op,
            inputs,
        }
    }

    /// A configuration value echoed into the row.
    pub fn param(value: impl Into<Value>) -> Self {
        Self::new(value, "parameter", Value::Null)
    }

    fn text(&self) -> String {
        render_value(&self.value)
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(render_value).collect::<Vec<_>>().join(","),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Ordered columns; serializes as a JSON object in column order.
#[derive(Clone, Debug, Default)]
pub struct Row(pub Vec<(&'static str, Cell)>);

impl Row {
    pub fn push(&mut self, column: &'static str, cell: Cell) -> &mut Self {
        self.0.push((column, cell));
        self
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Everything one subcommand produced. `rows` feed every format; `trials`
/// replaces `rows` in JSON when present.
pub struct Report {
    pub config: Value,
    pub rows: Vec<Row>,
    pub trials: Option<Vec<TrialReport>>,
    pub failures: Vec<Value>,
}

#[derive(Serialize)]
struct RowsDoc<'a> {
    config: &'a Value,
    rows: &'a [Row],
    failures: &'a [Value],
    version: &'a str,
}

#[derive(Serialize)]
struct TrialsDoc<'a> {
    config: &'a Value,
    trials: &'a [TrialReport],
    failures: &'a [Value],
    version: &'a str,
}

impl Report {
    pub fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let version = env!("CARGO_PKG_VERSION");
                match &self.trials {
                    Some(trials) => serde_json::to_writer_pretty(
                        &mut *out,
                        &TrialsDoc { config: &self.config, trials, failures: &self.failures, version },
                    ),
                    None => serde_json::to_writer_pretty(
                        &mut *out,
                        &RowsDoc { config: &self.config, rows: &self.rows, failures: &self.failures, version },
                    ),
                }
                .map_err(std::io::Error::other)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                if let Some(first) = self.rows.first() {
                    w.write_record(first.0.iter().map(|(k, _)| *k))?;
                }
                for row in &self.rows {
                    w.write_record(row.0.iter().map(|(_, c)| c.text()))?;
                }
                w.flush()
            }
            Format::Table => {
                let Some(first) = self.rows.first() else {
                    return Ok(());
                };
                let header: Vec<String> = first.0.iter().map(|(k, _)| k.to_string()).collect();
                let body: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.0.iter().map(|(_, c)| c.text()).collect())
                    .collect();
                let mut widths: Vec<usize> = header.iter().map(String::len).collect();
                for r in &body {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.len());
                    }
                }
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                writeln!(out, "{}", line(&header))?;
                for r in &body {
                    writeln!(out, "{}", line(r))?;
                }
                if !self.failures.is_empty() {
                    writeln!(out, "{} failure(s)", self.failures.len())?;
                }
                Ok(())
            }
        }
    }
}
