//! Rendering of any serializable report as JSON, flattened CSV or an
//! aligned text table, and the matching JSON loader.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            other => Err(Error::Parameter(format!(
                "format must be json, csv or table, got {other}"
            ))),
        }
    }
}

fn to_value<T: Serialize>(report: &T) -> Result<Value> {
    serde_json::to_value(report).map_err(|e| Error::Format(e.to_string()))
}

/// Nested objects become `outer.inner`, arrays `name_0`, `name_1`, ...
pub fn flatten(value: &Value) -> Vec<(String, Value)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, child, out);
                }
            }
            Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    walk(&format!("{prefix}_{i}"), child, out);
                }
            }
            leaf => out.push((prefix.to_string(), leaf.clone())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn table_cell(v: &Value) -> String {
    match v.as_f64() {
        Some(x) if v.is_f64() => {
            let ax = x.abs();
            if x == 0.0 || (1e-3..1e7).contains(&ax) {
                format!("{x:.9}")
            } else {
                format!("{x:.6e}")
            }
        }
        _ => cell(v),
    }
}

pub fn to_json<T: Serialize>(report: &T) -> Result<String> {
    serde_json::to_string_pretty(report).map_err(|e| Error::Format(e.to_string()))
}

/// One header line and one row per record. A top-level `rows` array is
/// emitted row-wise; anything else is a single record.
pub fn to_csv<T: Serialize>(report: &T) -> Result<String> {
    let records = records(&to_value(report)?);
    let header: Vec<String> = records
        .first()
        .map(|r| r.iter().map(|(k, _)| k.clone()).collect())
        .unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Format(e.to_string());
    w.write_record(&header).map_err(fail)?;
    for rec in &records {
        w.write_record(rec.iter().map(|(_, v)| cell(v))).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

fn records(value: &Value) -> Vec<Vec<(String, Value)>> {
    if let Some(Value::Array(rows)) = value.get("rows") {
        if rows.iter().all(Value::is_object) && !rows.is_empty() {
            return rows.iter().map(flatten).collect();
        }
    }
    vec![flatten(value)]
}

/// Key/value lines for a single record, aligned columns for `rows`.
pub fn to_table<T: Serialize>(report: &T) -> Result<String> {
    let value = to_value(report)?;
    let recs = records(&value);
    let mut out = String::new();
    if recs.len() == 1 {
        let width = recs[0].iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &recs[0] {
            let _ = writeln!(out, "{k:<width$}  {}", table_cell(v));
        }
        return Ok(out);
    }
    let header: Vec<&str> = recs[0].iter().map(|(k, _)| k.as_str()).collect();
    let cells: Vec<Vec<String>> = recs.iter().map(|r| r.iter().map(|(_, v)| table_cell(v)).collect()).collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| cells.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |items: Vec<&str>| -> String {
        items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", line(header.clone()));
    for row in &cells {
        let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
    }
    Ok(out)
}

pub fn render<T: Serialize>(report: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Table => to_table(report),
    }
}

/// Parses a JSON report back into its type.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Sample {
        lhs: f64,
        name: String,
        alphas: Vec<f64>,
        inner: Inner,
    }

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Inner {
        lo: f64,
    }

    fn sample() -> Sample {
        Sample {
            lhs: 1.25,
            name: "x".into(),
            alphas: vec![3.0, 4.5],
            inner: Inner { lo: -2.0 },
        }
    }

    #[test]
    fn csv_flattens_with_index_suffix() {
        let text = to_csv(&sample()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "lhs,name,alphas_0,alphas_1,inner.lo");
        assert_eq!(lines.next().unwrap(), "1.25,x,3.0,4.5,-2.0");
    }

    #[test]
    fn json_roundtrip() {
        let s = sample();
        let back: Sample = from_json(&to_json(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn table_lists_indexed_keys() {
        let t = to_table(&sample()).unwrap();
        assert!(t.contains("alphas_1"));
        assert!(t.contains("4.500000000"));
    }

    #[test]
    fn rows_render_row_wise() {
        #[derive(Serialize)]
        struct R {
            rows: Vec<Inner>,
        }
        let r = R {
            rows: vec![Inner { lo: 1.0 }, Inner { lo: 2.0 }],
        };
        assert_eq!(to_csv(&r).unwrap().lines().count(), 3);
        assert_eq!(to_table(&r).unwrap().lines().count(), 3);
    }
}
