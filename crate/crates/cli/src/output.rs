//! Tabular output shared by every subcommand: CSV with a header row, or a
//! JSON array of objects keyed by the same column names.

use std::io::Write;
use std::path::Path;

/// Magnitudes below this print as an exact zero. Overridable through the
/// `TRIQENT_TOL` environment variable.
pub const DEFAULT_ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Num(f64),
    Missing,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Reads the output zero clamp from `TRIQENT_TOL`; unset means the
/// default, anything unparsable is a usage error.
pub fn load_zero_tol() -> Result<f64, String> {
    match std::env::var("TRIQENT_TOL") {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ZERO_TOL),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err("TRIQENT_TOL: not valid unicode".to_string())
        }
        Ok(raw) => {
            let v: f64 = raw
                .trim()
                .parse()
                .map_err(|_| format!("TRIQENT_TOL: '{raw}' is not a number"))?;
            if !v.is_finite() || v < 0.0 {
                return Err(format!("TRIQENT_TOL: {v} must be finite and nonnegative"));
            }
            Ok(v)
        }
    }
}

fn clamp(v: f64, zero_tol: f64) -> f64 {
    if v.abs() < zero_tol {
        0.0
    } else {
        v
    }
}

/// Fixed-width scientific notation keeps every digit the caller computed.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_csv(table: &Table, zero_tol: f64) -> String {
    let mut out = String::new();
    out.push_str(&table.header.join(","));
    out.push('\n');
    for row in &table.rows {
        let fields: Vec<String> = row
            .iter()
            .map(|cell| match cell {
                Cell::Text(s) => s.clone(),
                Cell::Num(v) => fmt_float(clamp(*v, zero_tol)),
                Cell::Missing => "never".to_string(),
            })
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(table: &Table, zero_tol: f64) -> String {
    let mut rows = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        // serde_json maps are ordered by key, so the layout is deterministic
        let mut obj = serde_json::Map::new();
        for (name, cell) in table.header.iter().zip(row) {
            let value = match cell {
                Cell::Text(s) => serde_json::Value::String(s.clone()),
                Cell::Num(v) => serde_json::Number::from_f64(clamp(*v, zero_tol))
                    .map(serde_json::Value::Number)
                    .unwrap_or(serde_json::Value::Null),
                Cell::Missing => serde_json::Value::Null,
            };
            obj.insert((*name).to_string(), value);
        }
        rows.push(serde_json::Value::Object(obj));
    }
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Array(rows))
        .expect("plain data serializes");
    text.push('\n');
    text
}

pub fn write_out(text: &str, path: Option<&Path>) -> Result<(), String> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| format!("writing stdout: {e}"))
        }
        Some(p) => std::fs::write(p, text).map_err(|e| format!("writing {}: {e}", p.display())),
    }
}
