//! Tables and their CSV / JSON renderings.
//!
//! Numbers are written in shortest round-trip form, so reading a file back
//! reproduces every value bit for bit. JSON carries numbers as strings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
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

/// Shortest string that parses back to exactly `v`.
///
/// Plain notation in the usual range, exponent notation outside it so tiny
/// residuals do not print as hundreds of zeros.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Footer metadata, written as `# key = value` lines in CSV.
    pub meta: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, rows: Vec::new(), meta: Vec::new() }
    }

    pub fn push_meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.meta.push((key.into(), value.into()));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k} = {v}");
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|c| Value::String(c.render())).collect()))
            .collect();
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        json!({ "columns": self.columns, "rows": rows, "meta": meta })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain strings serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Header, raw cell strings and footer of an emitted CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub meta: Vec<(String, String)>,
}

impl ParsedCsv {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        self.rows.iter().map(|r| r.get(idx)?.parse().ok()).collect()
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

pub fn parse_csv(text: &str) -> Option<ParsedCsv> {
    let mut lines = text.lines();
    let columns: Vec<String> = lines.next()?.split(',').map(str::to_string).collect();
    let mut rows = Vec::new();
    let mut meta = Vec::new();
    for line in lines {
        if let Some(rest) = line.strip_prefix("# ") {
            let (k, v) = rest.split_once(" = ")?;
            meta.push((k.to_string(), v.to_string()));
        } else if !line.is_empty() {
            let row: Vec<String> = line.split(',').map(str::to_string).collect();
            if row.len() != columns.len() {
                return None;
            }
            rows.push(row);
        }
    }
    Some(ParsedCsv { columns, rows, meta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, -2.5e-7, 6.02e23, f64::MAX, f64::MIN_POSITIVE, 5e-324] {
            let s = format_number(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(format_number(1e-300), "1e-300");
        assert_eq!(format_number(0.625), "0.625");
        assert!(format_number(f64::NAN).parse::<f64>().unwrap().is_nan());
    }

    #[test]
    fn csv_round_trip() {
        let mut t = Table::new(vec!["x".into(), "y".into(), "status".into()]);
        t.rows.push(vec![0.1.into(), (-1e-9).into(), "ok".into()]);
        t.rows.push(vec![2.0.into(), f64::NAN.into(), "singular".into()]);
        t.push_meta("zero", "1e-17");
        let back = parse_csv(&t.to_csv()).unwrap();
        assert_eq!(back.columns, t.columns);
        assert_eq!(back.column("x").unwrap(), vec![0.1, 2.0]);
        assert_eq!(back.rows[1][2], "singular");
        assert_eq!(back.meta("zero"), Some("1e-17"));
    }

    #[test]
    fn json_keeps_numbers_as_strings() {
        let mut t = Table::new(vec!["r".into()]);
        t.rows.push(vec![0.1.into()]);
        t.push_meta("k", "v");
        let v = t.to_json();
        assert_eq!(v["rows"][0][0], Value::String("0.1".into()));
        assert_eq!(v["meta"]["k"], Value::String("v".into()));
    }
}
