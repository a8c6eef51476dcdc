//! Rendering of command results as json, csv or plain text.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// A command result: one record, or a list of rows sharing some metadata.
#[derive(Debug)]
pub enum Output {
    Record(Map<String, Value>),
    Table { meta: Map<String, Value>, key: &'static str, rows: Vec<Map<String, Value>> },
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Plain => self.plain(),
        }
    }

    fn json(&self) -> String {
        let v = match self {
            Output::Record(m) => Value::Object(m.clone()),
            Output::Table { meta, key, rows } => {
                let mut m = meta.clone();
                m.insert((*key).into(), Value::Array(rows.iter().cloned().map(Value::Object).collect()));
                Value::Object(m)
            }
        };
        let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
        s.push('\n');
        s
    }

    /// One header line and one line per row; table metadata is repeated on every row.
    fn csv(&self) -> String {
        let rows: Vec<Vec<(String, String)>> = match self {
            Output::Record(m) => vec![flatten(m)],
            Output::Table { meta, rows, .. } => rows
                .iter()
                .map(|r| {
                    let mut cells = flatten(meta);
                    cells.extend(flatten(r));
                    cells
                })
                .collect(),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(first) = rows.first() {
            w.write_record(first.iter().map(|(k, _)| k)).expect("in-memory write");
        }
        for r in &rows {
            w.write_record(r.iter().map(|(_, v)| v)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    fn plain(&self) -> String {
        let mut out = String::new();
        let (meta, rows) = match self {
            Output::Record(m) => (m, &[][..]),
            Output::Table { meta, rows, .. } => (meta, &rows[..]),
        };
        let cells = flatten(meta);
        let width = cells.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in cells {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        for r in rows {
            let line: Vec<String> = flatten(r).into_iter().map(|(_, v)| v).collect();
            out.push_str(&line.join("  "));
            out.push('\n');
        }
        out
    }
}

/// Flattens one level of nesting (`value.re` becomes `value_re`) and renders scalars as text.
fn flatten(m: &Map<String, Value>) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (k, v) in m {
        match v {
            Value::Object(inner) => {
                for (ik, iv) in inner {
                    out.push((format!("{k}_{ik}"), scalar(iv)));
                }
            }
            v => out.push((k.clone(), scalar(v))),
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join("; "),
        other => other.to_string(),
    }
}
