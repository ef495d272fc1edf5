//! Output records and their table, JSON and CSV renderings.
//!
//! Every number passes through [`format_number`] (12 significant digits), so
//! all three formats carry identical values.

use serde_json::{Map, Number};

pub const SCHEMA_VERSION: &str = "1";
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    List(Vec<f64>),
    IntList(Vec<i64>),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl From<Vec<f64>> for Value {
    fn from(x: Vec<f64>) -> Self {
        Value::List(x)
    }
}

impl From<&[f64]> for Value {
    fn from(x: &[f64]) -> Self {
        Value::List(x.to_vec())
    }
}

/// Column-oriented numeric table (used by `curve`).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Vec<(String, Value)>,
    pub results: Vec<(String, Value)>,
    pub table: Option<Table>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: Vec::new(),
            results: Vec::new(),
            table: None,
        }
    }

    pub fn input(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.push((name.to_string(), value.into()));
        self
    }

    pub fn result(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.results.push((name.to_string(), value.into()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.results.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self
            .inputs
            .iter()
            .chain(&self.results)
            .map(|(k, _)| k.len())
            .max()
            .unwrap_or(0);
        for (k, v) in self.inputs.iter().chain(&self.results) {
            out.push_str(&format!("{k:<width$}  {}\n", render_plain(v, ", ")));
        }
        if let Some(table) = &self.table {
            if !out.is_empty() {
                out.push('\n');
            }
            let cells: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| r.iter().map(|x| format_number(*x)).collect())
                .collect();
            let widths: Vec<usize> = table
                .columns
                .iter()
                .enumerate()
                .map(|(j, c)| cells.iter().map(|r| r[j].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |items: Vec<&str>| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    + "\n"
            };
            out.push_str(&line(table.columns.iter().map(String::as_str).collect()));
            for row in &cells {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
        out
    }

    fn to_csv(&self) -> String {
        if let Some(table) = &self.table {
            let mut out = table.columns.join(",") + "\n";
            for row in &table.rows {
                out.push_str(&row.iter().map(|x| format_number(*x)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            return out;
        }
        let mut out = String::from("section,name,value\n");
        for (section, entries) in [("input", &self.inputs), ("result", &self.results)] {
            for (k, v) in entries {
                match v {
                    Value::List(xs) => {
                        for (i, x) in xs.iter().enumerate() {
                            out.push_str(&format!("{section},{k}[{}],{}\n", i + 1, format_number(*x)));
                        }
                    }
                    Value::IntList(xs) => {
                        for (i, x) in xs.iter().enumerate() {
                            out.push_str(&format!("{section},{k}[{}],{x}\n", i + 1));
                        }
                    }
                    other => out.push_str(&format!("{section},{k},{}\n", csv_escape(&render_plain(other, ";")))),
                }
            }
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut top = Map::new();
        top.insert("schema_version".into(), SCHEMA_VERSION.into());
        top.insert("command".into(), self.command.clone().into());
        top.insert("inputs".into(), json_map(&self.inputs));
        top.insert("results".into(), json_map(&self.results));
        if let Some(table) = &self.table {
            top.insert(
                "table".into(),
                serde_json::json!({
                    "columns": table.columns,
                    "rows": table.rows.iter().map(|r| r.iter().map(|x| json_number(*x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
            );
        }
        serde_json::Value::Object(top)
    }

    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }
}

fn json_map(entries: &[(String, Value)]) -> serde_json::Value {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert(k.clone(), json_value(v));
    }
    serde_json::Value::Object(m)
}

fn json_value(v: &Value) -> serde_json::Value {
    match v {
        Value::Num(x) => json_number(*x),
        Value::Int(i) => (*i).into(),
        Value::Bool(b) => (*b).into(),
        Value::Text(s) => s.clone().into(),
        Value::List(xs) => xs.iter().map(|x| json_number(*x)).collect(),
        Value::IntList(xs) => xs.iter().map(|&x| serde_json::Value::from(x)).collect(),
    }
}

/// The 12-digit value as a JSON number; non-finite values become strings.
fn json_number(x: f64) -> serde_json::Value {
    let text = format_number(x);
    match text.parse::<f64>().ok().and_then(Number::from_f64) {
        Some(n) => serde_json::Value::Number(n),
        None => serde_json::Value::String(text),
    }
}

fn render_plain(v: &Value, sep: &str) -> String {
    match v {
        Value::Num(x) => format_number(*x),
        Value::Int(i) => i.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Text(s) => s.clone(),
        Value::List(xs) => xs.iter().map(|x| format_number(*x)).collect::<Vec<_>>().join(sep),
        Value::IntList(xs) => xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `x` rounded to 12 significant digits, trailing zeros removed; plain
/// notation for moderate exponents, scientific otherwise.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        let rounded: f64 = sci.parse().expect("round trip");
        trim_zeros(format!("{rounded:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}
