use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Violation,
    Undecided,
    Witness,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::Violation => "violation",
            Verdict::Undecided => "undecided",
            Verdict::Witness => "witness",
        }
    }

    /// Violations and undecided records make the run exit with status 1.
    pub fn is_flagged(self) -> bool {
        matches!(self, Verdict::Violation | Verdict::Undecided)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    U(u64),
    /// Printed with six decimals.
    F(f64),
    B(bool),
    S(String),
    Empty,
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::U(v) => v.to_string(),
            Value::F(v) => format!("{v:.6}"),
            Value::B(v) => v.to_string(),
            Value::S(s) => s.clone(),
            Value::Empty => String::new(),
        }
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::U(v)
    }
}

impl From<Option<u64>> for Value {
    fn from(v: Option<u64>) -> Self {
        v.map_or(Value::Empty, Value::U)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::B(v)
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::S(v)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::U(v) => s.serialize_u64(*v),
            Value::F(v) => {
                let rounded: f64 = format!("{v:.6}").parse().expect("formatted float parses");
                s.serialize_f64(rounded)
            }
            Value::B(v) => s.serialize_bool(*v),
            Value::S(v) => s.serialize_str(v),
            Value::Empty => s.serialize_none(),
        }
    }
}

/// Column layout of one task's report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schema {
    pub fields: &'static [&'static str],
    pub verdict_column: bool,
}

impl Schema {
    pub const fn new(fields: &'static [&'static str]) -> Self {
        Schema { fields, verdict_column: true }
    }

    pub const fn without_verdict(fields: &'static [&'static str]) -> Self {
        Schema { fields, verdict_column: false }
    }

    pub fn header(&self) -> Vec<&'static str> {
        let mut h = self.fields.to_vec();
        if self.verdict_column {
            h.push("verdict");
        }
        h
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub key: u64,
    pub verdict: Verdict,
    pub values: Vec<Value>,
    /// Extra counter bumped in the run tallies, e.g. `fast_path`.
    pub tag: Option<&'static str>,
}

impl Record {
    pub fn new(key: u64, verdict: Verdict, values: Vec<Value>) -> Self {
        Record { key, verdict, values, tag: None }
    }

    pub fn tagged(mut self, tag: Option<&'static str>) -> Self {
        self.tag = tag;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

struct JsonRow<'a> {
    schema: &'a Schema,
    record: &'a Record,
}

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (name, value) in self.schema.fields.iter().zip(&self.record.values) {
            map.serialize_entry(name, value)?;
        }
        if self.schema.verdict_column {
            map.serialize_entry("verdict", &self.record.verdict)?;
        }
        map.end()
    }
}

/// The report header, empty for JSONL.
pub fn encode_header(schema: &Schema, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(schema.header()).map_err(csv_err)?;
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Jsonl => Ok(Vec::new()),
    }
}

pub fn encode_records(schema: &Schema, format: Format, records: &[Record]) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            for r in records {
                debug_assert_eq!(r.values.len(), schema.fields.len());
                let mut row: Vec<String> = r.values.iter().map(Value::text).collect();
                if schema.verdict_column {
                    row.push(r.verdict.to_string());
                }
                w.write_record(&row).map_err(csv_err)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Jsonl => {
            let mut out = Vec::new();
            for record in records {
                serde_json::to_writer(&mut out, &JsonRow { schema, record })
                    .map_err(|e| CliError::Io(e.into()))?;
                out.push(b'\n');
            }
            Ok(out)
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}
