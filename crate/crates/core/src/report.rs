//! Machine-readable experiment reports: ordered result records plus named
//! numerical checks, rendered as JSON or CSV.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

/// A single cell of a result record.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Text(String),
    Null,
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Num(x) if x.is_finite() => s.serialize_f64(*x),
            Field::Num(_) | Field::Null => s.serialize_none(),
            Field::Int(i) => s.serialize_i64(*i),
            Field::Text(t) => s.serialize_str(t),
        }
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<i64> for Field {
    fn from(x: i64) -> Self {
        Field::Int(x)
    }
}

impl From<usize> for Field {
    fn from(x: usize) -> Self {
        Field::Int(x as i64)
    }
}

impl From<&str> for Field {
    fn from(x: &str) -> Self {
        Field::Text(x.to_string())
    }
}

impl From<String> for Field {
    fn from(x: String) -> Self {
        Field::Text(x)
    }
}

impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(x: Option<T>) -> Self {
        x.map_or(Field::Null, Into::into)
    }
}

/// Key/value pairs that keep their insertion order when serialized.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(String, Field)>);

impl Record {
    pub fn new() -> Self {
        Record(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(k, _)| k.as_str())
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn num(&self, key: &str) -> Option<f64> {
        match self.get(key)? {
            Field::Num(x) => Some(*x),
            Field::Int(i) => Some(*i as f64),
            _ => None,
        }
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value ≤ tolerance` (NaN fails).
    pub fn at_most(name: &str, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<C: Serialize> {
    pub command: String,
    pub config: C,
    pub results: Vec<Record>,
    pub checks: Vec<Check>,
}

impl<C: Serialize> Report<C> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report is serializable");
        out.push('\n');
        out
    }

    /// The result records as CSV; the header is the key order of the first
    /// record, and numbers carry 17 significant digits.
    pub fn to_csv(&self) -> String {
        records_to_csv(&self.results)
    }
}

fn csv_cell(f: &Field) -> String {
    match f {
        Field::Num(x) if x.is_finite() => format!("{x:.16e}"),
        Field::Num(_) | Field::Null => String::new(),
        Field::Int(i) => i.to_string(),
        Field::Text(t) => {
            if t.contains([',', '"', '\n']) {
                format!("\"{}\"", t.replace('"', "\"\""))
            } else {
                t.clone()
            }
        }
    }
}

pub fn records_to_csv(records: &[Record]) -> String {
    let mut out = String::new();
    let Some(first) = records.first() else {
        return out;
    };
    let header: Vec<&str> = first.keys().collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for rec in records {
        let cells: Vec<String> = header
            .iter()
            .map(|k| rec.get(k).map(csv_cell).unwrap_or_default())
            .collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}
