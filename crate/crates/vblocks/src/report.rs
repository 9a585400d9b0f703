use std::collections::BTreeMap;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "plain" => Ok(Format::Plain),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("expected plain, json, or csv, got {:?}", other)),
        }
    }
}

pub enum Payload {
    Empty,
    Value(String),
    Table { columns: Vec<String>, rows: Vec<Vec<String>> },
}

/// One emitted result. All numeric content is carried as exact strings
/// ("p/q" for rationals, decimal for integers), never floats.
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub payload: Payload,
    pub extras: BTreeMap<String, String>,
    pub pass: Option<bool>,
    pub witness: Option<String>,
    pub plain_value: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            payload: Payload::Empty,
            extras: BTreeMap::new(),
            pass: None,
            witness: None,
            plain_value: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Report {
        self.inputs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn extra(mut self, key: &str, value: impl ToString) -> Report {
        self.extras.insert(key.to_string(), value.to_string());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.plain(),
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }

    fn label(&self) -> String {
        match self.inputs.iter().find(|(k, _)| k == "check") {
            Some((_, name)) => format!("{} {}", self.command, name),
            None => self.command.clone(),
        }
    }

    fn plain(&self) -> String {
        let mut out = String::new();
        if let Some(pass) = self.pass {
            out.push_str(&self.label());
            out.push_str(if pass { ": PASS\n" } else { ": FAIL\n" });
            if let Some(w) = &self.witness {
                out.push_str(&format!("witness: {}\n", w));
            }
            for (k, v) in &self.extras {
                out.push_str(&format!("{}: {}\n", k, v));
            }
        }
        if let Some(line) = &self.plain_value {
            out.push_str(line);
            out.push('\n');
            return out;
        }
        match &self.payload {
            Payload::Empty => {}
            Payload::Value(v) => {
                out.push_str(v);
                out.push('\n');
            }
            Payload::Table { columns, rows } => {
                let mut width: Vec<usize> = columns.iter().map(|c| c.len()).collect();
                for row in rows {
                    for (j, cell) in row.iter().enumerate() {
                        width[j] = width[j].max(cell.len());
                    }
                }
                let line = |cells: &[String]| -> String {
                    let mut s = String::new();
                    for (j, cell) in cells.iter().enumerate() {
                        if j > 0 {
                            s.push_str("  ");
                        }
                        if j + 1 == cells.len() {
                            s.push_str(cell);
                        } else {
                            s.push_str(&format!("{:w$}", cell, w = width[j]));
                        }
                    }
                    s.push('\n');
                    s
                };
                out.push_str(&line(columns));
                for row in rows {
                    out.push_str(&line(row));
                }
            }
        }
        out
    }

    fn json(&self) -> String {
        let mut top = Map::new();
        top.insert("schema".to_string(), Value::String("vb-1".to_string()));
        top.insert("command".to_string(), Value::String(self.command.clone()));
        let mut inputs = Map::new();
        for (k, v) in &self.inputs {
            inputs.insert(k.clone(), Value::String(v.clone()));
        }
        top.insert("inputs".to_string(), Value::Object(inputs));
        let mut outputs = Map::new();
        match &self.payload {
            Payload::Empty => {}
            Payload::Value(v) => {
                outputs.insert("value".to_string(), Value::String(v.clone()));
            }
            Payload::Table { columns, rows } => {
                let rows: Vec<Value> = rows
                    .iter()
                    .map(|row| {
                        let mut obj = Map::new();
                        for (col, cell) in columns.iter().zip(row) {
                            obj.insert(col.clone(), Value::String(cell.clone()));
                        }
                        Value::Object(obj)
                    })
                    .collect();
                outputs.insert("rows".to_string(), Value::Array(rows));
            }
        }
        for (k, v) in &self.extras {
            outputs.insert(k.clone(), Value::String(v.clone()));
        }
        top.insert("outputs".to_string(), Value::Object(outputs));
        if let Some(pass) = self.pass {
            top.insert("pass".to_string(), Value::Bool(pass));
        }
        if let Some(w) = &self.witness {
            top.insert("witness".to_string(), Value::String(w.clone()));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(top)).unwrap();
        text.push('\n');
        text
    }

    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        match &self.payload {
            Payload::Table { columns, rows } => {
                w.write_record(columns).unwrap();
                for row in rows {
                    w.write_record(row).unwrap();
                }
            }
            payload => {
                let mut columns: Vec<&str> = self.inputs.iter().map(|(k, _)| k.as_str()).collect();
                let mut cells: Vec<&str> = self.inputs.iter().map(|(_, v)| v.as_str()).collect();
                if let Payload::Value(v) = payload {
                    columns.push("value");
                    cells.push(v);
                }
                for (k, v) in &self.extras {
                    columns.push(k);
                    cells.push(v);
                }
                let pass_cell;
                if let Some(pass) = self.pass {
                    pass_cell = if pass { "true" } else { "false" };
                    columns.push("pass");
                    cells.push(pass_cell);
                }
                if let Some(witness) = &self.witness {
                    columns.push("witness");
                    cells.push(witness);
                }
                w.write_record(&columns).unwrap();
                w.write_record(&cells).unwrap();
            }
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}
