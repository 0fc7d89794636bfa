//! Tabular results and their CSV/JSON serialization.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use serde_json::{json, Map, Value};

/// Significant digits used for every printed float.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A single table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Small integer, printed as a JSON number.
    Count(u64),
    /// Arbitrary-precision integer in decimal, printed as a JSON string.
    BigInt(String),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Count(v) => v.to_string(),
            Cell::BigInt(s) | Cell::Text(s) => s.clone(),
            Cell::Float(x) => format_float(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Count(v) => json!(v),
            Cell::BigInt(s) | Cell::Text(s) => json!(s),
            Cell::Float(x) => float_json(*x),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Count(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// `x` with [`SIGNIFICANT_DIGITS`] significant digits, trailing zeros
/// trimmed; scientific notation outside `[1e−5, 1e12)`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-5..12).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mant), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// JSON number carrying the printed precision; `null` when not finite.
pub fn float_json(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let y: f64 = format_float(x).parse().expect("formatted float parses");
    serde_json::Number::from_f64(y).map_or(Value::Null, Value::Number)
}

/// A table with a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::to_csv))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(r) {
                    m.insert(c.clone(), v.to_json());
                }
                Value::Object(m)
            })
            .collect();
        json!({ "columns": self.columns, "rows": rows })
    }
}

/// Provenance block of every JSON document.
#[derive(Debug, Clone, PartialEq)]
pub struct Meta {
    pub command: String,
    pub argv: Vec<String>,
    pub seed: Option<u64>,
    pub parameters: Map<String, Value>,
}

impl Meta {
    pub fn new(command: &str, argv: &[String]) -> Self {
        Meta {
            command: command.to_string(),
            argv: argv.to_vec(),
            seed: None,
            parameters: Map::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "command_line": self.argv.join(" "),
            "seed": self.seed,
            "parameters": self.parameters,
        })
    }
}

/// Result of a subcommand: tables plus optional extra JSON fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub meta: Meta,
    pub tables: Vec<Table>,
    pub extra: Map<String, Value>,
}

impl Document {
    pub fn new(meta: Meta) -> Self {
        Document {
            meta,
            tables: Vec::new(),
            extra: Map::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut data = self.extra.clone();
        for t in &self.tables {
            data.insert(t.name.clone(), t.to_json());
        }
        json!({ "meta": self.meta.to_json(), "data": data })
    }

    /// CSV of the single table, or of the one named `block`.
    pub fn to_csv(&self, block: Option<&str>) -> Result<String, String> {
        let t = match block {
            Some(b) => self
                .tables
                .iter()
                .find(|t| t.name == b)
                .ok_or_else(|| format!("no table named {b:?}"))?,
            None if self.tables.len() == 1 => &self.tables[0],
            None if self.tables.is_empty() => {
                return Err("nothing to write as CSV; use --format json".into())
            }
            None => {
                let names: Vec<&str> = self.tables.iter().map(|t| t.name.as_str()).collect();
                return Err(format!(
                    "several tables ({}); choose one with --block",
                    names.join(", ")
                ));
            }
        };
        Ok(t.to_csv())
    }

    pub fn render(&self, format: Format, block: Option<&str>) -> Result<String, String> {
        match format {
            Format::Csv => self.to_csv(block),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
        }
    }
}

/// Writes `text` to the file, or to `stdout` when no path is given.
pub fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

/// `a,b,c` with [`format_float`] entries, for human-readable summaries.
pub fn join_floats(xs: &[f64]) -> String {
    let mut s = String::new();
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{}", format_float(*x));
    }
    s
}
