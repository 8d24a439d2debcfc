use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
}

impl Cell {
    /// Shortest decimal string that parses back to the same value.
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:?}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

/// Tabular result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }

    fn json(&self) -> Result<String, CliError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("command".into(), Value::from(self.command));
        doc.insert("params".into(), self.params.clone());
        doc.insert("rows".into(), Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).map_err(|e| CliError::Output(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }
}
