//! Tabular output records and their CSV / JSON encodings.
//!
//! Floats are written as `{:.16e}` (17 significant digits), so identical
//! inputs give byte-identical files. In JSON, non-finite values become `null`;
//! in CSV they are spelled `inf`, `-inf` and `NaN`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::ser::{Error as _, SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Small ordered JSON value. Maps keep insertion order.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    List(Vec<Value>),
    Map(Vec<(String, Value)>),
}

impl Value {
    pub fn map<K: Into<String>>(entries: impl IntoIterator<Item = (K, Value)>) -> Self {
        Value::Map(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn nums(xs: &[f64]) -> Self {
        Value::List(xs.iter().map(|&x| Value::Num(x)).collect())
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Str(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Str(x)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Self {
        x.map_or(Value::Null, Into::into)
    }
}

fn serialize_f64<S: Serializer>(x: f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    RawValue::from_string(format!("{x:.16e}"))
        .map_err(S::Error::custom)?
        .serialize(s)
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Null => s.serialize_none(),
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Int(i) => s.serialize_i64(*i),
            Value::Num(x) => serialize_f64(*x, s),
            Value::Str(t) => s.serialize_str(t),
            Value::List(v) => {
                let mut seq = s.serialize_seq(Some(v.len()))?;
                for x in v {
                    seq.serialize_element(x)?;
                }
                seq.end()
            }
            Value::Map(m) => {
                let mut map = s.serialize_map(Some(m.len()))?;
                for (k, v) in m {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnData {
    Float(Vec<f64>),
    Int(Vec<i64>),
}

impl ColumnData {
    fn len(&self) -> usize {
        match self {
            ColumnData::Float(v) => v.len(),
            ColumnData::Int(v) => v.len(),
        }
    }

    fn push_cell(&self, i: usize, out: &mut String) {
        match self {
            ColumnData::Float(v) => write!(out, "{:.16e}", v[i]),
            ColumnData::Int(v) => write!(out, "{}", v[i]),
        }
        .expect("writing to a String cannot fail");
    }
}

impl Serialize for ColumnData {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ColumnData::Float(v) => {
                let mut seq = s.serialize_seq(Some(v.len()))?;
                for &x in v {
                    seq.serialize_element(&Value::Num(x))?;
                }
                seq.end()
            }
            ColumnData::Int(v) => v.serialize(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub data: ColumnData,
}

impl Column {
    pub fn float(name: impl Into<String>, data: Vec<f64>) -> Self {
        Column {
            name: name.into(),
            data: ColumnData::Float(data),
        }
    }

    pub fn int(name: impl Into<String>, data: Vec<i64>) -> Self {
        Column {
            name: name.into(),
            data: ColumnData::Int(data),
        }
    }
}

/// One output file: metadata, equal-length columns and the tolerances the
/// numbers were checked against.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub metadata: Vec<(String, Value)>,
    pub columns: Vec<Column>,
    pub provenance: Vec<(String, f64)>,
    /// Verification records, only for `verify`.
    pub reports: Option<Vec<Value>>,
}

impl OutputRecord {
    pub fn new(command: impl Into<String>) -> Self {
        OutputRecord {
            command: command.into(),
            metadata: Vec::new(),
            columns: Vec::new(),
            provenance: Vec::new(),
            reports: None,
        }
    }

    pub fn meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.push((key.to_string(), value.into()));
        self
    }

    pub fn column(mut self, c: Column) -> Self {
        self.columns.push(c);
        self
    }

    pub fn tolerance(mut self, check: &str, tol: f64) -> Self {
        self.provenance.push((check.to_string(), tol));
        self
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.data.len())
    }

    fn check_shape(&self) {
        let n = self.rows();
        for c in &self.columns {
            assert_eq!(c.data.len(), n, "column '{}' has the wrong length", c.name);
        }
    }

    pub fn to_csv(&self) -> String {
        self.check_shape();
        let mut out = String::new();
        let names: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&names.join(","));
        out.push('\n');
        for i in 0..self.rows() {
            for (j, c) in self.columns.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                c.data.push_cell(i, &mut out);
            }
            out.push('\n');
        }
        out
    }

    /// JSON document; with `with_data = false` the column arrays are left out
    /// (CSV sidecar).
    pub fn to_json(&self, with_data: bool) -> String {
        self.check_shape();
        let doc = JsonDoc {
            record: self,
            with_data,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn encode(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(true),
        }
    }
}

struct JsonDoc<'a> {
    record: &'a OutputRecord,
    with_data: bool,
}

impl Serialize for JsonDoc<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = self.record;
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("schema_version", SCHEMA_VERSION)?;
        map.serialize_entry("command", &r.command)?;
        map.serialize_entry("metadata", &Value::Map(r.metadata.clone()))?;
        let order: Vec<&str> = r.columns.iter().map(|c| c.name.as_str()).collect();
        map.serialize_entry("column_order", &order)?;
        if self.with_data {
            map.serialize_entry("columns", &Columns(&r.columns))?;
        } else {
            map.serialize_entry("rows", &r.rows())?;
        }
        let prov = Value::map(r.provenance.iter().map(|(k, t)| (k.clone(), Value::Num(*t))));
        map.serialize_entry("provenance", &prov)?;
        if let Some(reports) = &r.reports {
            map.serialize_entry("reports", reports)?;
        }
        map.end()
    }
}

struct Columns<'a>(&'a [Column]);

impl Serialize for Columns<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for c in self.0 {
            map.serialize_entry(&c.name, &c.data)?;
        }
        map.end()
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Writes `record` to `out`, or to stdout when `out` is `None`. CSV files get
/// a `<out>.meta.json` sidecar holding everything but the column data.
pub fn emit(record: &OutputRecord, format: Format, out: Option<&Path>) -> CliResult<()> {
    let body = record.encode(format);
    match out {
        Some(path) => {
            write_file(path, &body)?;
            if format == Format::Csv {
                write_file(&sidecar_path(path), &record.to_json(false))?;
            }
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}
