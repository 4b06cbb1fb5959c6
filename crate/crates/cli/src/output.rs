//! Tabular results with a provenance preamble, written as CSV or JSON.

use serde::Serialize;
use serde_json::{json, Map, Value};
use std::io::Write;

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Shortest decimal string that parses back to the same `f64`.
///
/// Plain notation for moderate magnitudes, exponent notation otherwise.
pub fn format_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else if v == 0.0 || (1e-5..1e16).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_f64(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(format_f64(*v)),
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// A result table with its run metadata.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Deterministic run summaries, in insertion order.
    pub summary: Vec<(String, Cell)>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            command: command.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match the header");
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.into(), value.into()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

/// Run metadata recorded ahead of the data.
#[derive(Debug, Clone)]
pub struct Provenance {
    pub version: &'static str,
    /// Fully resolved configuration, defaults included.
    pub config: Value,
    pub seed: u64,
    /// Wall-clock seconds, omitted when timing is disabled.
    pub runtime_s: Option<f64>,
}

pub fn write_csv<W: Write>(out: &mut W, report: &Report, prov: &Provenance) -> std::io::Result<()> {
    write!(out, "# adz {}\r\n", report.command)?;
    write!(out, "# version: {}\r\n", prov.version)?;
    write!(out, "# seed: {}\r\n", prov.seed)?;
    write!(out, "# config: {}\r\n", serde_json::to_string(&prov.config).expect("config serialises"))?;
    for (k, v) in &report.summary {
        write!(out, "# {k}: {}\r\n", v.text())?;
    }
    for n in &report.notes {
        write!(out, "# note: {n}\r\n")?;
    }
    if let Some(t) = prov.runtime_s {
        write!(out, "# runtime_s: {}\r\n", format_f64(t))?;
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
    w.write_record(&report.columns)?;
    for row in &report.rows {
        w.write_record(row.iter().map(Cell::text))?;
    }
    w.flush()
}

pub fn to_json(report: &Report, prov: &Provenance) -> Value {
    let mut p = Map::new();
    p.insert("command".into(), json!(report.command));
    p.insert("version".into(), json!(prov.version));
    p.insert("seed".into(), json!(prov.seed));
    p.insert("config".into(), prov.config.clone());
    if let Some(t) = prov.runtime_s {
        p.insert("runtime_s".into(), json!(t));
    }
    let summary: Map<String, Value> = report.summary.iter().map(|(k, v)| (k.clone(), v.json())).collect();
    let rows: Vec<Value> = report.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
    json!({
        "provenance": p,
        "summary": summary,
        "notes": report.notes,
        "columns": report.columns,
        "rows": rows,
    })
}

pub fn write_report<W: Write>(out: &mut W, report: &Report, prov: &Provenance, format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => write_csv(out, report, prov),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &to_json(report, prov))?;
            writeln!(out)
        }
    }
}
