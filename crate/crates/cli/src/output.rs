//! Deterministic CSV and JSON writers.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{Map, Number, Value};

use crate::config::{Format, OutputSpec};
use crate::error::CliError;

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// Numeric table with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", fmt_f64(*x));
            }
            s.push('\n');
        }
        s
    }

    /// Array of objects, one per row.
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, x)| (c.clone(), json_number(*x)))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => render_json(&self.to_json_value()),
        }
    }
}

/// Non-finite values become `null`.
pub fn json_number(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes `text` to the output path, or to stdout when none is set.
pub fn emit(spec: &OutputSpec, text: &str) -> Result<(), CliError> {
    match &spec.path {
        Some(path) => write_file(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-20, -2.5e300, 0.0, 5e-324] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(0.5), "0.5");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec![1.0, 0.25]);
        t.push(vec![-3.0, 1e-17]);
        assert_eq!(t.to_csv(), "a,b\n1.0,0.25\n-3.0,1e-17\n");
        assert_eq!(t.column("b").unwrap(), vec![0.25, 1e-17]);
        assert!(t.column("c").is_none());
    }

    #[test]
    fn json_rows() {
        let mut t = Table::new(["x"]);
        t.push(vec![2.0]);
        t.push(vec![f64::NAN]);
        let v = t.to_json_value();
        assert_eq!(v[0]["x"], 2.0);
        assert!(v[1]["x"].is_null());
    }
}
