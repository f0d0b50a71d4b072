//! Tabulated output: CSV with a header row or a JSON array of row objects.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Flag(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Flag(b) => Value::Bool(*b),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Row(pub Vec<(String, Cell)>);

impl Row {
    pub fn push(&mut self, key: &str, cell: Cell) -> &mut Self {
        self.0.push((key.to_string(), cell));
        self
    }

    pub fn num(&mut self, key: &str, x: f64) -> &mut Self {
        self.push(key, Cell::Num(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Renders `rows`; all rows are expected to share the first row's keys.
pub fn render(rows: &[Row], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            if let Some(first) = rows.first() {
                let header: Vec<&str> = first.0.iter().map(|(k, _)| k.as_str()).collect();
                out.push_str(&header.join(","));
                out.push('\n');
            }
            for row in rows {
                let cells: Vec<String> = row.0.iter().map(|(_, c)| c.csv()).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
            out
        }
        Format::Json => {
            let array: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let map: Map<String, Value> =
                        row.0.iter().map(|(k, c)| (k.clone(), c.json())).collect();
                    Value::Object(map)
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&Value::Array(array))
                .expect("JSON values always serialize");
            out.push('\n');
            out
        }
    }
}
