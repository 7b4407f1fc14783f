use serde_json::{Map, Number, Value};
use vitalfew::curves::format::{fmt_sig, round_sig};

use crate::args::Format;
use crate::CliError;

#[derive(Debug, Clone)]
pub enum Field {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

pub type Record = Vec<(&'static str, Field)>;

/// Result of a scalar command.
///
/// `summary` and `rows` are printed in text mode; `context` only appears in
/// CSV (as leading columns repeated on every row) and JSON.
#[derive(Debug, Default)]
pub struct Report {
    pub context: Record,
    pub summary: Record,
    pub rows: Vec<Record>,
}

impl Field {
    fn text(&self, digits: usize) -> String {
        match self {
            Field::Num(x) => fmt_sig(*x, digits),
            Field::Int(n) => n.to_string(),
            Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Field::Num(x) => Number::from_f64(round_sig(*x, digits)).map_or(Value::Null, Value::Number),
            Field::Int(n) => Value::from(*n),
            Field::Text(s) => Value::String(s.clone()),
            Field::Bool(b) => Value::Bool(*b),
        }
    }
}

fn line(record: &Record, digits: usize) -> String {
    record
        .iter()
        .map(|(k, v)| format!("{k}={}", v.text(digits)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn object(records: &[&Record], digits: usize) -> Map<String, Value> {
    records
        .iter()
        .flat_map(|r| r.iter())
        .map(|(k, v)| (k.to_string(), v.json(digits)))
        .collect()
}

impl Report {
    pub fn render(&self, format: Format, digits: usize) -> Result<String, CliError> {
        match format {
            Format::Text => {
                let mut out = String::new();
                if !self.summary.is_empty() {
                    out.push_str(&line(&self.summary, digits));
                    out.push('\n');
                }
                for row in &self.rows {
                    out.push_str(&line(row, digits));
                    out.push('\n');
                }
                Ok(out)
            }
            Format::Csv => {
                let fixed: Vec<&(&str, Field)> = self.context.iter().chain(&self.summary).collect();
                let mut header: Vec<&str> = fixed.iter().map(|(k, _)| *k).collect();
                let prefix: Vec<String> = fixed.iter().map(|(_, v)| v.text(digits)).collect();
                let mut table = Vec::new();
                if let Some(first) = self.rows.first() {
                    header.extend(first.iter().map(|(k, _)| *k));
                    for row in &self.rows {
                        let mut cells = prefix.clone();
                        cells.extend(row.iter().map(|(_, v)| v.text(digits)));
                        table.push(cells);
                    }
                } else {
                    table.push(prefix);
                }
                let mut out = header.join(",");
                out.push('\n');
                for cells in table {
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                Ok(out)
            }
            Format::Json => {
                let mut body = object(&[&self.context, &self.summary], digits);
                if !self.rows.is_empty() {
                    let rows = self
                        .rows
                        .iter()
                        .map(|r| Value::Object(object(&[r], digits)))
                        .collect();
                    body.insert("rows".into(), Value::Array(rows));
                }
                Ok(pretty(&Value::Object(body)))
            }
            Format::Svg => Err(CliError::Usage(
                "this command has no SVG rendering; use text, csv or json".into(),
            )),
        }
    }
}

pub fn pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    text
}
