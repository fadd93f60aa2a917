//! The serialized result of one CLI invocation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use omega_core::exact::rational::to_string;
use omega_core::exact::{Rational, UniPoly};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// A verification ran and the two sides differ.
    Mismatch,
    InvalidInput,
    Error,
}

/// One typed value. Rationals are `"p/q"` strings, polynomials list their
/// coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Field {
    Rational(String),
    Polynomial(Vec<String>),
    Bool(bool),
    Integer(i64),
    Exponents(Vec<u32>),
    Text(String),
}

impl Field {
    pub fn rational(q: &Rational) -> Self {
        Field::Rational(to_string(q))
    }

    pub fn poly(p: &UniPoly) -> Self {
        Field::Polynomial(p.to_strings())
    }

    fn render(&self) -> String {
        match self {
            Field::Rational(s) | Field::Text(s) => s.clone(),
            Field::Polynomial(c) => format!("[{}]", c.join(", ")),
            Field::Bool(b) => b.to_string(),
            Field::Integer(i) => i.to_string(),
            Field::Exponents(e) => {
                format!("({})", e.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            }
        }
    }

    fn type_name(&self) -> &'static str {
        match self {
            Field::Rational(_) => "rational",
            Field::Polynomial(_) => "polynomial",
            Field::Bool(_) => "bool",
            Field::Integer(_) => "integer",
            Field::Exponents(_) => "exponents",
            Field::Text(_) => "text",
        }
    }
}

/// A labeled group of fields, e.g. one verified case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Output {
    pub label: String,
    pub fields: BTreeMap<String, Field>,
}

impl Output {
    pub fn new(label: impl Into<String>) -> Self {
        Output { label: label.into(), fields: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, value: Field) -> Self {
        self.fields.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Field> {
        self.fields.get(name)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheReport {
    pub enabled: bool,
    pub path: Option<String>,
    pub loaded: u64,
    pub entries: u64,
    pub hits: u64,
    pub misses: u64,
    pub appended: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    /// The argument vector, without the program name.
    pub command: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<Output>,
    pub status: Status,
    pub message: Option<String>,
    pub wall_time_us: u64,
    pub cache: CacheReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    /// One row per field: `label,field,type,value`; polynomial coefficients
    /// are joined by spaces.
    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["label", "field", "type", "value"]).unwrap();
        for out in &self.outputs {
            for (name, value) in &out.fields {
                let cell = match value {
                    Field::Polynomial(c) => c.join(" "),
                    Field::Exponents(e) => e.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
                    other => other.render(),
                };
                w.write_record([out.label.as_str(), name, value.type_name(), &cell]).unwrap();
            }
        }
        let status = format!("{:?}", self.status).to_lowercase();
        w.write_record(["", "status", "text", &status]).unwrap();
        if let Some(m) = &self.message {
            w.write_record(["", "message", "text", m]).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "omega {}", self.command.join(" ")).unwrap();
        for out in &self.outputs {
            writeln!(s, "{}", out.label).unwrap();
            for (name, value) in &out.fields {
                writeln!(s, "  {name}: {}", value.render()).unwrap();
            }
        }
        if let Some(m) = &self.message {
            writeln!(s, "message: {m}").unwrap();
        }
        let c = &self.cache;
        writeln!(
            s,
            "status: {:?}  time: {:.3}s  cache: {} entries, {} hits, {} misses",
            self.status,
            self.wall_time_us as f64 / 1e6,
            c.entries,
            c.hits,
            c.misses
        )
        .unwrap();
        s
    }
}
