//! Stable text output: floats rounded to 12 significant digits, JSON and CSV emitters.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const SIG_DIGITS: usize = 12;

/// Rounds to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Display form of [`round_sig`]; non-finite values print as `nan`, `inf`, `-inf`.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{}", round_sig(x))
    }
}

/// Rounds every non-integer number inside `v`.
pub fn normalize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap());
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(a) => a.iter_mut().for_each(normalize),
        Value::Object(o) => o.values_mut().for_each(normalize),
        _ => {}
    }
}

/// `serde_json::to_value` followed by [`normalize`].
pub fn to_normalized<T: Serialize>(v: &T) -> Result<Value> {
    let mut v = serde_json::to_value(v)?;
    normalize(&mut v);
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_float(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// One-row table of the scalar fields of a JSON object, in key order.
    pub fn from_scalars(obj: &Map<String, Value>) -> Self {
        let mut t = Table::default();
        let mut row = Vec::new();
        for (k, v) in obj {
            let cell = match v {
                Value::Number(n) => match n.as_i64() {
                    Some(i) => Cell::Int(i as i128),
                    None => match n.as_u64() {
                        Some(u) => Cell::Int(u as i128),
                        None => Cell::Float(n.as_f64().unwrap()),
                    },
                },
                Value::Bool(b) => Cell::Text(b.to_string()),
                Value::String(s) => Cell::Text(s.clone()),
                Value::Null => Cell::Text(String::new()),
                _ => continue,
            };
            t.header.push(k.clone());
            row.push(cell);
        }
        t.rows.push(row);
        t
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(&self.header).map_err(err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(-2.0 / 3.0 * 1e-20), -6.66666666667e-21);
        assert_eq!(fmt_float(123456789012345.0), "123456789012000");
        assert_eq!(fmt_float(f64::NAN), "nan");
        assert_eq!(round_sig(0.0), 0.0);
    }

    #[test]
    fn normalize_json() {
        let mut v = json!({"a": 0.1 + 0.2, "b": [1, 2.0000000000001], "c": {"d": -4}});
        normalize(&mut v);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"a":0.3,"b":[1,2.0],"c":{"d":-4}}"#);
    }

    #[test]
    fn csv_table() {
        let mut t = Table::new(["x", "y", "name"]);
        t.push(vec![1u64.into(), (1.0 / 7.0).into(), "a,b".into()]);
        assert_eq!(t.to_csv().unwrap(), "x,y,name\n1,0.142857142857,\"a,b\"\n");
        let obj = json!({"sum": -4, "normalized": -0.5, "list": [1]});
        let t = Table::from_scalars(obj.as_object().unwrap());
        assert_eq!(t.to_csv().unwrap(), "normalized,sum\n-0.5,-4\n");
    }
}
