//! Deterministic CSV and JSON report emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
    Empty,
}

impl From<i128> for Cell {
    fn from(v: i128) -> Self {
        Cell::Int(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(if v { "PASS" } else { "FAIL" }.into())
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// `printf("%.{digits}g")`.
pub fn format_g(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let p = digits.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        trim(&format!("{:.*}", (p as i32 - 1 - exp) as usize, x))
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_g(*v, 12),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => i64::try_from(*v).map_or_else(|_| Value::String(v.to_string()), Value::from),
            Cell::Float(v) => {
                let s = format_g(*v, 12);
                s.parse::<f64>()
                    .ok()
                    .and_then(serde_json::Number::from_f64)
                    .map_or(Value::String(s), Value::Number)
            }
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// One table of results plus the settings that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub settings: BTreeMap<String, Cell>,
    pub summary: BTreeMap<String, Cell>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.into(),
            settings: BTreeMap::new(),
            summary: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn setting(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.settings.insert(key.into(), value.into());
        self
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.summary.insert(key.into(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header line plus one line per row, LF-terminated.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let obj = |m: &BTreeMap<String, Cell>| -> Value {
            Value::Object(m.iter().map(|(k, v)| (k.clone(), v.to_json())).collect())
        };
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::to_json).collect())).collect();
        let doc = json!({
            "command": self.command,
            "settings": obj(&self.settings),
            "summary": obj(&self.summary),
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Companion path for the JSON mirror of a CSV report.
pub fn mirror_path(path: &Path) -> Option<PathBuf> {
    let mirror = path.with_extension("json");
    (mirror != path).then_some(mirror)
}

/// Writes `report` to `out` (stdout when absent). A CSV written to a file is
/// accompanied by its JSON mirror, which also carries the settings.
pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> io::Result<()> {
    match out {
        None => {
            print!("{}", report.render(format));
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, report.render(format))?;
            if format == Format::Csv {
                if let Some(mirror) = mirror_path(path) {
                    std::fs::write(mirror, report.to_json())?;
                }
            }
            Ok(())
        }
    }
}
