use std::io::Write;

use num::ToPrimitive;
use randpart::Rational;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    Int(i128),
    Float(f64),
    Exact(Rational),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => x.to_string(),
            Cell::Exact(r) => rational_text(r),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => i64::try_from(*i).map(Value::from).unwrap_or_else(|_| Value::String(i.to_string())),
            Cell::Float(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or_else(|| Value::String(x.to_string())),
            Cell::Exact(r) => Value::String(rational_text(r)),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

/// `num/den`, with integers written as `n/1`.
pub fn rational_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn decimal(r: &Rational) -> Cell {
    Cell::Float(r.to_f64().unwrap_or(f64::NAN))
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
impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}
impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i128)
    }
}
impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x as i128)
    }
}
impl From<Rational> for Cell {
    fn from(r: Rational) -> Self {
        Cell::Exact(r)
    }
}
impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// A result table plus solver diagnostics.
#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub diagnostics: Map<String, Value>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl serde::Serialize) {
        self.diagnostics.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }
}

pub struct Meta {
    pub subcommand: String,
    pub parameters: Value,
    pub seed: u64,
}

pub fn render_csv(meta: &Meta, table: &Table) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut line = |s: String| out.extend_from_slice(s.as_bytes());
    line(format!("# tool: randpart {}\n", env!("CARGO_PKG_VERSION")));
    line(format!("# subcommand: {}\n", meta.subcommand));
    line(format!("# parameters: {}\n", meta.parameters));
    line(format!("# seed: {}\n", meta.seed));
    if !table.diagnostics.is_empty() {
        line(format!("# diagnostics: {}\n", Value::Object(table.diagnostics.clone())));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns).map_err(|e| e.to_string())?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::csv)).map_err(|e| e.to_string())?;
    }
    out.extend(w.into_inner().map_err(|e| e.to_string())?);
    Ok(out)
}

pub fn render_json(meta: &Meta, table: &Table) -> Result<Vec<u8>, String> {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| Value::Object(table.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect()))
        .collect();
    let doc = json!({
        "meta": {
            "tool": "randpart",
            "version": env!("CARGO_PKG_VERSION"),
            "subcommand": meta.subcommand,
            "parameters": meta.parameters,
            "seed": meta.seed,
            "columns": table.columns,
            "diagnostics": Value::Object(table.diagnostics.clone()),
        },
        "rows": rows,
    });
    let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| e.to_string())?;
    out.push(b'\n');
    Ok(out)
}

pub fn write(bytes: &[u8], path: Option<&std::path::Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()
        }
    }
}
