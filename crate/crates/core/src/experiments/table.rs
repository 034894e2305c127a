use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, OutputFormat};
use crate::error::{Error, Result};
use crate::facets::FacetFile;

/// One value in a result table. Non-finite floats are stored as `Null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    pub fn float(x: f64) -> Self {
        if x.is_finite() {
            Cell::Float(x)
        } else {
            Cell::Null
        }
    }

    pub fn opt(x: Option<f64>) -> Self {
        x.map(Cell::float).unwrap_or(Cell::Null)
    }

    pub fn int(x: usize) -> Self {
        Cell::Int(x as i64)
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Cell::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn to_csv(&self) -> String {
        match self {
            Cell::Null => String::new(),
            Cell::Bool(b) => b.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_sig(*x, 12),
            Cell::Text(s) => s.clone(),
        }
    }
}

pub type Row = Vec<Cell>;

/// `x` with `digits` significant digits, trailing zeros removed.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{:.*e}", digits - 1, x);
        match s.split_once('e') {
            Some((m, e)) => format!("{}e{e}", trim_zeros(m.to_string())),
            None => s,
        }
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of a numeric column; non-numeric cells are skipped.
    pub fn numbers(&self, name: &str) -> Vec<f64> {
        match self.column_index(name) {
            Some(k) => self.rows.iter().filter_map(|r| r[k].as_f64()).collect(),
            None => Vec::new(),
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            if row.len() != self.columns.len() {
                return Err(Error::DimensionMismatch(format!("row of {} cells for {} columns", row.len(), self.columns.len())));
            }
            w.write_record(row.iter().map(Cell::to_csv))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let columns = r.headers()?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(rec?.iter().map(parse_cell).collect());
        }
        Ok(Self { columns, rows })
    }
}

fn parse_cell(s: &str) -> Cell {
    if s.is_empty() {
        Cell::Null
    } else if let Ok(i) = s.parse::<i64>() {
        Cell::Int(i)
    } else if let Ok(x) = s.parse::<f64>() {
        Cell::float(x)
    } else if let Ok(b) = s.parse::<bool>() {
        Cell::Bool(b)
    } else {
        Cell::Text(s.to_string())
    }
}

/// A named pass/fail outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

/// Output of one command: the per-sample table, aggregate numbers and checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: ExperimentConfig,
    pub summary: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
    pub table: Table,
    /// Facet list produced by the hull and facet commands.
    #[serde(skip)]
    pub facet_file: Option<FacetFile>,
}

impl Report {
    pub fn new(command: &str, cfg: &ExperimentConfig, table: Table) -> Self {
        Self {
            command: command.into(),
            config: cfg.clone(),
            summary: BTreeMap::new(),
            checks: Vec::new(),
            table,
            facet_file: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.summary.insert(key.into(), v);
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }

    pub fn summary_f64(&self, key: &str) -> Option<f64> {
        self.summary.get(key).and_then(|v| v.as_f64())
    }

    /// Table as CSV or the whole report as JSON.
    pub fn write<W: Write>(&self, mut out: W, format: OutputFormat) -> Result<()> {
        match format {
            OutputFormat::Csv => self.table.write_csv(out),
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut out, self)?;
                writeln!(out)?;
                Ok(())
            }
        }
    }

    /// Summary and checks as human-readable lines.
    pub fn summary_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.summary {
            let shown = match v {
                serde_json::Value::Number(n) => n.as_f64().map(|x| format_sig(x, 8)).unwrap_or_else(|| n.to_string()),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {shown}\n"));
        }
        for c in &self.checks {
            s.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
        }
        s
    }
}
