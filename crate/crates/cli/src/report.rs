use std::io::{self, Write};

use multfree::exact_linalg::rational::{format_rational, Rat};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

/// Version of the structured record layout.
pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
    Undecided,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 1,
            Outcome::Undecided => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Outcome::Positive => "positive",
            Outcome::Negative => "negative",
            Outcome::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

/// Output of one command: structured records and a human summary built
/// side by side, plus the verdict.
pub struct Report {
    command: &'static str,
    records: Vec<Value>,
    human: Vec<String>,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, records: Vec::new(), human: Vec::new(), outcome: Outcome::Positive }
    }

    /// Appends a record of the given kind; `fields` must be a JSON object.
    pub fn record(&mut self, kind: &str, fields: Value) {
        let mut map = match fields {
            Value::Object(m) => m,
            other => panic!("record fields must be an object, got {other}"),
        };
        map.insert("kind".into(), kind.into());
        self.records.push(Value::Object(map));
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.human.push(text.into());
    }

    pub fn set(&mut self, outcome: Outcome) {
        self.outcome = outcome;
    }

    pub fn structured_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.records.iter().map(|r| envelope(self.command, r.clone())).collect();
        let summary = json!({
            "kind": "summary",
            "verdict": self.outcome.name(),
            "exit_code": self.outcome.exit_code(),
        });
        out.push(envelope(self.command, summary));
        out
    }

    pub fn emit(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Human => {
                for l in &self.human {
                    writeln!(out, "{l}")?;
                }
                writeln!(out, "verdict: {}", self.outcome.name())
            }
            Format::Structured => {
                for l in self.structured_lines() {
                    writeln!(out, "{l}")?;
                }
                Ok(())
            }
        }
    }
}

/// One JSON line with sorted keys.
pub fn envelope(command: &str, record: Value) -> String {
    let mut map = match record {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    map.insert("command".into(), command.into());
    map.insert("schema_version".into(), SCHEMA_VERSION.into());
    serde_json::to_string(&Value::Object(map)).expect("JSON values serialize")
}

pub fn q(x: &Rat) -> Value {
    Value::String(format_rational(x))
}

pub fn qs(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

pub fn z(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(i) => i.into(),
        Err(_) => Value::String(x.to_string()),
    }
}

pub fn zs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(z).collect())
}

pub fn zss(v: &[Vec<BigInt>]) -> Value {
    Value::Array(v.iter().map(|r| zs(r)).collect())
}

/// `(1/2, 0)` style text for a rational point.
pub fn show_point(v: &[Rat]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

pub fn show_ints(v: &[BigInt]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn show_list(vs: &[Vec<BigInt>]) -> String {
    format!("{{{}}}", vs.iter().map(|v| show_ints(v)).collect::<Vec<_>>().join(" "))
}
