use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

pub const TOOL: &str = "cramped";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rows for CSV emission. Every row is prefixed with the provenance columns.
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Table { headers, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Report {
    pub command: &'static str,
    pub pair: Option<Value>,
    pub seed: u64,
    pub result: Value,
    pub text: Vec<String>,
    pub table: Table,
    pub exit: i32,
}

impl Report {
    pub fn new(command: &'static str, pair: Option<Value>, seed: u64, result: impl Serialize) -> Self {
        Report {
            command,
            pair,
            seed,
            result: serde_json::to_value(result).expect("result serializes"),
            text: Vec::new(),
            table: Table::new(Vec::new()),
            exit: 0,
        }
    }

    fn pair_name(&self) -> String {
        self.pair
            .as_ref()
            .and_then(|p| p.get("name"))
            .and_then(Value::as_str)
            .unwrap_or("")
            .to_string()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = json!({
                    "tool": TOOL,
                    "version": VERSION,
                    "command": self.command,
                    "pair": self.pair,
                    "seed": self.seed,
                    "result": self.result,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("{TOOL} {VERSION} {}", self.command);
                if self.pair.is_some() {
                    s.push_str(&format!(" pair={}", self.pair_name()));
                }
                s.push_str(&format!(" seed={}\n", self.seed));
                for line in &self.text {
                    s.push_str(line);
                    s.push('\n');
                }
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut header = vec!["tool", "version", "pair", "seed"];
                header.extend(self.table.headers.iter().copied());
                w.write_record(&header).expect("in-memory write");
                let prefix = [TOOL.to_string(), VERSION.to_string(), self.pair_name(), self.seed.to_string()];
                for row in &self.table.rows {
                    let full: Vec<&str> = prefix.iter().chain(row.iter()).map(String::as_str).collect();
                    w.write_record(&full).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
            }
        }
    }
}

pub fn list<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}
