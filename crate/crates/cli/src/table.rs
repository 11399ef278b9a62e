//! Result tables and their CSV / JSON encodings.
//!
//! A CSV file starts with one comment line, `# lrdent <version> <config JSON>`,
//! followed by an RFC-4180 header row and data rows. Reals are written with 17
//! significant digits, divergent quantities as `divergent`, failed cells as
//! `failed: <reason>` and absent cells as empty fields.

use std::io::{BufRead, Write};

use serde_json::{json, Map, Value};

use crate::CliError;

pub const DIVERGENT: &str = "divergent";
pub const FAILED_PREFIX: &str = "failed: ";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Divergent,
    Failed(String),
    Missing,
}

impl Cell {
    /// Non-finite values become failures rather than numbers.
    pub fn num(x: f64) -> Self {
        if x.is_finite() {
            Cell::Num(x)
        } else {
            Cell::Failed(format!("non-finite value {x}"))
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn int(n: usize) -> Self {
        Cell::Int(n as i64)
    }

    pub fn failed(e: impl std::fmt::Display) -> Self {
        Cell::Failed(e.to_string().replace(['\n', '\r'], " "))
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, Cell::Failed(_))
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Divergent => DIVERGENT.to_string(),
            Cell::Failed(why) => format!("{FAILED_PREFIX}{why}"),
            Cell::Missing => String::new(),
        }
    }

    pub fn parse(field: &str) -> Self {
        if field.is_empty() {
            return Cell::Missing;
        }
        if field == DIVERGENT {
            return Cell::Divergent;
        }
        if let Some(why) = field.strip_prefix(FAILED_PREFIX) {
            return Cell::Failed(why.to_string());
        }
        if let Ok(n) = field.parse::<i64>() {
            return Cell::Int(n);
        }
        match field.parse::<f64>() {
            Ok(x) if x.is_finite() => Cell::Num(x),
            _ => Cell::Text(field.to_string()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Int(n) => json!(n),
            Cell::Num(x) => json!(x),
            Cell::Text(s) => json!(s),
            Cell::Divergent => json!(DIVERGENT),
            Cell::Failed(why) => json!({ "failed": why }),
            Cell::Missing => Value::Null,
        }
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        Some(match v {
            Value::Null => Cell::Missing,
            Value::Number(n) => match n.as_i64() {
                Some(i) if !n.is_f64() => Cell::Int(i),
                _ => Cell::Num(n.as_f64()?),
            },
            Value::String(s) if s == DIVERGENT => Cell::Divergent,
            Value::String(s) => Cell::Text(s.clone()),
            Value::Object(o) => Cell::Failed(o.get("failed")?.as_str()?.to_string()),
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match header");
        self.rows.push(row);
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().flatten().filter(|c| c.is_failed()).count()
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

pub fn write<W: Write>(out: W, format: Format, config: &Value, table: &Table) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(out, config, table),
        Format::Json => write_json(out, config, table),
    }
}

pub fn write_csv<W: Write>(mut out: W, config: &Value, table: &Table) -> Result<(), CliError> {
    writeln!(out, "# lrdent {} {}", lrdent_core::VERSION, serde_json::to_string(config)?)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(mut out: W, config: &Value, table: &Table) -> Result<(), CliError> {
    let results: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = table.columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
            Value::Object(obj)
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("config".into(), config.clone());
    doc.insert("columns".into(), json!(table.columns));
    doc.insert("results".into(), Value::Array(results));
    serde_json::to_writer_pretty(&mut out, &Value::Object(doc))?;
    writeln!(out)?;
    Ok(())
}

/// Reads a CSV written by [`write_csv`], returning the echoed config.
pub fn read_csv<R: BufRead>(mut input: R) -> Result<(Value, Table), CliError> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    let malformed = || CliError::Format("missing `# lrdent <version> <config>` comment line".into());
    let rest = first.trim_end().strip_prefix("# lrdent ").ok_or_else(malformed)?;
    let (_, config) = rest.split_once(' ').ok_or_else(malformed)?;
    let config: Value = serde_json::from_str(config)?;

    let mut r = csv::Reader::from_reader(input);
    let columns: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    let mut table = Table::new(columns);
    for record in r.records() {
        table.rows.push(record?.iter().map(Cell::parse).collect());
    }
    Ok((config, table))
}

pub fn read_json<R: std::io::Read>(input: R) -> Result<(Value, Table), CliError> {
    let doc: Value = serde_json::from_reader(input)?;
    let bad = |what: &str| CliError::Format(format!("JSON output lacks {what}"));
    let columns: Vec<String> = doc["columns"]
        .as_array()
        .ok_or_else(|| bad("`columns`"))?
        .iter()
        .map(|c| c.as_str().map(str::to_string).ok_or_else(|| bad("string column names")))
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(columns.clone());
    for row in doc["results"].as_array().ok_or_else(|| bad("`results`"))? {
        let cells = columns
            .iter()
            .map(|c| Cell::from_json(row.get(c).unwrap_or(&Value::Null)).ok_or_else(|| bad("well-formed cells")))
            .collect::<Result<_, _>>()?;
        table.rows.push(cells);
    }
    Ok((doc["config"].clone(), table))
}
