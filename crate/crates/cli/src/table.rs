//! Result tables and their CSV / JSON renderings.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;

pub const TOOL_NAME: &str = "hcpair";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

pub fn col(name: impl Into<String>, unit: impl Into<String>) -> Column {
    Column {
        name: name.into(),
        unit: unit.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Full-precision scientific notation (17 significant digits).
pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Num(v) => sci(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => json!(v),
            Cell::Num(v) => json!(v.to_string()),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub command: &'static str,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    /// Derived scalars reported alongside the rows, as `(key, value)`.
    pub notes: Vec<(String, String)>,
}

impl ResultTable {
    pub fn new(command: &'static str, columns: Vec<Column>) -> Self {
        Self {
            command,
            columns,
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row arity does not match {} schema",
            self.command
        );
        self.rows.push(row);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.notes.push((key.into(), value.to_string()));
    }

    pub fn header_line(&self) -> String {
        self.columns
            .iter()
            .map(|c| c.name.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn units_line(&self) -> String {
        self.columns
            .iter()
            .map(|c| c.unit.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Provenance stamped on every output.
#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub config: RunConfig,
    pub timestamp: String,
}

impl Metadata {
    pub fn now(config: &RunConfig) -> Self {
        Self {
            config: config.clone(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

pub fn render(table: &ResultTable, meta: &Metadata, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    match format {
        OutputFormat::Csv => render_csv(table, meta),
        OutputFormat::JsonLike => Ok(render_json(table, meta)),
    }
}

/// `# key: value` metadata lines, the config echoed as `# | <toml line>`, a `# units:`
/// line, then the header and data rows.
pub fn render_csv(table: &ResultTable, meta: &Metadata) -> Result<Vec<u8>, CliError> {
    let mut out = Vec::new();
    let io = |source| CliError::Io {
        path: "<csv buffer>".into(),
        source,
    };
    writeln!(out, "# tool: {TOOL_NAME} {TOOL_VERSION}").map_err(io)?;
    writeln!(out, "# command: {}", table.command).map_err(io)?;
    writeln!(out, "# timestamp: {}", meta.timestamp).map_err(io)?;
    for (k, v) in &table.notes {
        writeln!(out, "# note.{k}: {v}").map_err(io)?;
    }
    writeln!(out, "# config:").map_err(io)?;
    for line in meta.config.to_toml().lines() {
        writeln!(out, "# | {line}").map_err(io)?;
    }
    writeln!(out, "# units: {}", table.units_line()).map_err(io)?;

    let mut w = csv::WriterBuilder::new().from_writer(out);
    let csv_err = |e: csv::Error| CliError::Io {
        path: "<csv buffer>".into(),
        source: std::io::Error::other(e),
    };
    w.write_record(table.columns.iter().map(|c| c.name.as_str()))
        .map_err(csv_err)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::csv_text)).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| CliError::Io {
        path: "<csv buffer>".into(),
        source: e.into_error(),
    })
}

pub fn render_json(table: &ResultTable, meta: &Metadata) -> Vec<u8> {
    let config: Value = serde_json::to_value(&meta.config).expect("config serializes");
    let mut notes = Map::new();
    for (k, v) in &table.notes {
        notes.insert(k.clone(), json!(v));
    }
    let doc = json!({
        "metadata": {
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "command": table.command,
            "timestamp": meta.timestamp,
            "config": config,
            "config_toml": meta.config.to_toml(),
            "notes": notes,
        },
        "columns": table.columns.iter().map(|c| json!({"name": c.name, "unit": c.unit})).collect::<Vec<_>>(),
        "rows": table.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("json document serializes");
    bytes.push(b'\n');
    bytes
}

/// Recovers the producing configuration from a CSV output.
pub fn config_from_csv(text: &str) -> Result<RunConfig, CliError> {
    let toml: String = text
        .lines()
        .filter_map(|l| l.strip_prefix("# | ").or_else(|| (l == "# |").then_some("")))
        .map(|l| format!("{l}\n"))
        .collect();
    RunConfig::from_toml(&toml)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultTable {
        let mut t = ResultTable::new("demo", vec![col("a", "1"), col("label", "-"), col("n", "-")]);
        t.push(vec![Cell::Num(2.125), "x,y".into(), 3u32.into()]);
        t.push(vec![Cell::Num(1.0 / 3.0), Cell::Empty, 0u32.into()]);
        t.note("ratio", 4);
        t
    }

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(sci(2.125), "2.1250000000000000e0");
        let third = sci(1.0 / 3.0);
        assert_eq!(third.parse::<f64>().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn csv_layout() {
        let meta = Metadata {
            config: RunConfig::default(),
            timestamp: "T".into(),
        };
        let text = String::from_utf8(render_csv(&sample(), &meta).unwrap()).unwrap();
        assert!(text.starts_with("# tool: hcpair "));
        assert!(text.contains("# note.ratio: 4\n"));
        assert!(text.contains("\na,label,n\n2.1250000000000000e0,\"x,y\",3\n"));
        assert_eq!(config_from_csv(&text).unwrap(), RunConfig::default());
    }

    #[test]
    fn json_layout() {
        let meta = Metadata {
            config: RunConfig::default(),
            timestamp: "T".into(),
        };
        let v: Value = serde_json::from_slice(&render_json(&sample(), &meta)).unwrap();
        assert_eq!(v["rows"][1][1], Value::Null);
        assert_eq!(v["rows"][1][0].as_f64().unwrap(), 1.0 / 3.0);
        assert_eq!(v["metadata"]["notes"]["ratio"], "4");
        let echoed = RunConfig::from_toml(v["metadata"]["config_toml"].as_str().unwrap()).unwrap();
        assert_eq!(echoed, RunConfig::default());
    }

    #[test]
    #[should_panic(expected = "arity")]
    fn arity_enforced() {
        sample().push(vec![Cell::Empty]);
    }
}
