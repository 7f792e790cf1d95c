//! Output records: pretty JSON with 17 significant digits, or CSV.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Str(String),
    Bool(bool),
    Null,
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Num(v)
    }
}

impl From<i64> for Field {
    fn from(v: i64) -> Self {
        Field::Int(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Str(v.to_string())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Str(v)
    }
}

/// 17 significant digits in scientific notation.
pub fn num_token(v: f64) -> String {
    format!("{v:.16e}")
}

impl Field {
    fn csv_cell(&self) -> String {
        match self {
            Field::Num(v) => num_token(*v),
            Field::Int(v) => v.to_string(),
            Field::Str(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
            Field::Null => String::new(),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Num(v) if v.is_finite() => {
                RawValue::from_string(num_token(*v)).map_err(serde::ser::Error::custom)?.serialize(s)
            }
            Field::Num(_) | Field::Null => s.serialize_none(),
            Field::Int(v) => s.serialize_i64(*v),
            Field::Str(v) => s.serialize_str(v),
            Field::Bool(v) => s.serialize_bool(*v),
        }
    }
}

/// Ordered key/value list serialized as an object.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Fields(pub Vec<(&'static str, Field)>);

impl Fields {
    pub fn new() -> Self {
        Fields(Vec::new())
    }

    pub fn put(mut self, key: &'static str, v: impl Into<Field>) -> Self {
        self.0.push((key, v.into()));
        self
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: Fields,
    pub results: Vec<Fields>,
    pub warnings: Vec<String>,
    /// Numerical failure; the record is still printed.
    #[serde(skip)]
    pub failed: bool,
}

impl OutputRecord {
    pub fn new(command: &'static str, inputs: Fields) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            results: Vec::new(),
            warnings: Vec::new(),
            failed: false,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records always serialize");
        s.push('\n');
        s
    }

    /// Header from the first result's keys, one line per result. Warnings
    /// are not part of the table.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(first) = self.results.first() {
            w.write_record(first.0.iter().map(|(k, _)| *k)).expect("in-memory write");
            for row in &self.results {
                w.write_record(row.0.iter().map(|(_, v)| v.csv_cell())).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }
}
