use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    Violation,
    Exploratory,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Passed => 0,
            Status::Violation => 2,
            Status::Exploratory => 4,
        }
    }
}

/// A command result: the JSON value, an optional hand-written text form
/// (otherwise the JSON is flattened), and the exit status.
pub struct Outcome {
    pub json: Value,
    pub text: Option<String>,
    pub status: Status,
}

impl Outcome {
    pub fn new(report: &impl Serialize, status: Status) -> Self {
        Outcome {
            json: serde_json::to_value(report).expect("reports serialise"),
            text: None,
            status,
        }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn emit(self, format: Format, out: Option<&Path>) -> Result<u8, CliError> {
        let body = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("valid JSON") + "\n",
            Format::Text => self.text.unwrap_or_else(|| flatten(&self.json)),
        };
        match out {
            Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?,
            None => print!("{body}"),
        }
        Ok(self.status.code())
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        // arrays of scalars, or of arrays of scalars, print inline
        Value::Array(items) if items.iter().all(|i| !i.is_object() && (!i.is_array() || is_flat_array(i))) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()))
}

fn walk(prefix: &str, v: &Value, out: &mut String) {
    if let Some(s) = scalar(v) {
        writeln!(out, "{prefix}: {s}").unwrap();
        return;
    }
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                walk(&join(k), item, out);
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                walk(&join(&i.to_string()), item, out);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// `key.sub: value` lines, one per leaf.
pub fn flatten(v: &Value) -> String {
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flatten_nests_keys() {
        let v = json!({"a": 1, "b": {"c": [1, 2], "d": [{"e": true}]}, "f": null});
        assert_eq!(flatten(&v), "a: 1\nb.c: [1, 2]\nb.d.0.e: true\nf: -\n");
    }

    #[test]
    fn nested_pairs_stay_inline() {
        let v = json!({"edges": [[0, 1], [1, 2]]});
        assert_eq!(flatten(&v), "edges: [[0, 1], [1, 2]]\n");
    }
}
