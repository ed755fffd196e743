//! Report assembly and emission. CSV prints reals with 17 significant
//! digits (lossless f64 round-trip); JSON mirrors the same schema with a
//! columns array and rows of arrays. Identical inputs produce byte-stable
//! output in both formats.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    Int(i64),
    Real(f64),
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &str, columns: Vec<&'static str>) -> Self {
        Report {
            command: command.to_string(),
            parameters: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, name: &str, value: impl ToString) -> Self {
        self.parameters.push((name.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// All reals must be finite before emission.
    fn validate(&self) -> Result<(), String> {
        for row in &self.rows {
            for cell in row {
                if let Cell::Real(v) = cell {
                    if !v.is_finite() {
                        return Err(format!(
                            "non-finite value {v} in report for `{}`",
                            self.command
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(format_cell).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let mut params = serde_json::Map::new();
        for (k, v) in &self.parameters {
            params.insert(k.clone(), serde_json::Value::String(v.clone()));
        }
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                serde_json::Value::Array(
                    row.iter()
                        .map(|cell| match cell {
                            Cell::Text(s) => serde_json::Value::String(s.clone()),
                            Cell::Int(i) => serde_json::Value::Number((*i).into()),
                            Cell::Real(v) => serde_json::Number::from_f64(*v)
                                .map(serde_json::Value::Number)
                                .expect("validated finite"),
                        })
                        .collect(),
                )
            })
            .collect();
        let doc = serde_json::json!({
            "command": self.command,
            "parameters": serde_json::Value::Object(params),
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("static schema");
        s.push('\n');
        s
    }
}

fn format_cell(cell: &Cell) -> String {
    match cell {
        Cell::Text(s) => s.clone(),
        Cell::Int(i) => i.to_string(),
        Cell::Real(v) => {
            let mut s = String::new();
            // 17 significant digits: exact f64 round-trip
            write!(s, "{v:.16e}").expect("formatting f64");
            s
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Render and write the report; destination problems map to exit code 2.
pub fn emit(report: &Report, format: OutputFormat, dest: Option<&Path>) -> Result<(), String> {
    report.validate()?;
    let body = match format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json(),
    };
    match dest {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
        Some(path) => std::fs::write(path, body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}
