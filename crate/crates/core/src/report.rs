//! Inequality reports and CSV-ready tables.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

/// Which side is supposed to be larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `lhs ≤ rhs`
    Le,
    /// `lhs ≥ rhs`
    Ge,
}

/// Outcome of one inequality check.
///
/// `slack` is `rhs - lhs` for `≤` and `lhs - rhs` for `≥`, and
/// `pass ⇔ slack ≥ -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IneqReport {
    pub name: String,
    pub pass: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub params: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    #[serde(skip)]
    pub direction: Direction,
}

impl IneqReport {
    pub fn new(name: impl Into<String>, direction: Direction, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = match direction {
            Direction::Le => rhs - lhs,
            Direction::Ge => lhs - rhs,
        };
        IneqReport {
            name: name.into(),
            // NaN slack fails.
            pass: slack >= -tolerance,
            lhs,
            rhs,
            slack,
            tolerance,
            params: BTreeMap::new(),
            seed: None,
            direction,
        }
    }

    /// Report for `lhs ≤ rhs`.
    pub fn le(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(name, Direction::Le, lhs, rhs, tolerance)
    }

    /// Report for `lhs ≥ rhs`.
    pub fn ge(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(name, Direction::Ge, lhs, rhs, tolerance)
    }

    pub fn with_param(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.params.insert(key.to_string(), v);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// `slack / |reference|`, where the reference is the larger side.
    pub fn relative_slack(&self) -> f64 {
        let scale = self.lhs.abs().max(self.rhs.abs());
        if scale == 0.0 {
            0.0
        } else {
            self.slack / scale
        }
    }

    pub fn param_f64(&self, key: &str) -> Option<f64> {
        self.params.get(key).and_then(Value::as_f64)
    }
}

/// Tolerance for comparisons of quantities of size `scale`: 1e-9 absolute,
/// growing proportionally once `|scale| > 1`.
pub fn scaled_tolerance(scale: f64) -> f64 {
    1e-9 * scale.abs().max(1.0)
}

/// A table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Text(String),
    Int(i64),
    Float(f64),
}

impl Cell {
    /// Text form used in CSV output; floats get 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}
impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}
impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}
impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Float with 17 significant digits, `inf`/`-inf`/`nan` spelled out.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Rows of a scan with a fixed header.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Numeric values of a column.
    pub fn column_f64(&self, name: &str) -> Vec<f64> {
        let Some(c) = self.column(name) else {
            return Vec::new();
        };
        self.rows
            .iter()
            .map(|r| r[c].as_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    /// Rows as JSON objects keyed by the header.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj = self
                        .header
                        .iter()
                        .zip(row)
                        .map(|(h, c)| (h.clone(), serde_json::to_value(c).unwrap_or(Value::Null)))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}
