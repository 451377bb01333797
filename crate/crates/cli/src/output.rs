//! The JSON output record shared by every subcommand.
//!
//! One schema for all commands: `{"command", "inputs", "results",
//! "warnings"}` with inputs echoed, numeric results carried both at full
//! precision and as 4-decimal display strings, and keys in sorted order
//! so identical invocations emit identical bytes.

use std::path::Path;

use anyhow::Context;
use serde_json::{Map, Value};

/// A float as a JSON number with 17 significant digits, enough to
/// round-trip any `f64`.
pub fn num(v: f64) -> Value {
    let text = format!("{v:.16e}");
    Value::Number(text.parse().expect("formatted float is a JSON number"))
}

pub fn opt_num(v: Option<f64>) -> Value {
    v.map(num).unwrap_or(Value::Null)
}

pub struct Record {
    command: &'static str,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    warnings: Vec<String>,
}

impl Record {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            inputs: Map::new(),
            results: Map::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: Value) -> &mut Self {
        self.inputs.insert(key.to_string(), value);
        self
    }

    pub fn result(&mut self, key: &str, value: Value) -> &mut Self {
        self.results.insert(key.to_string(), value);
        self
    }

    pub fn warn(&mut self, message: impl Into<String>) -> &mut Self {
        self.warnings.push(message.into());
        self
    }

    fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.into()));
        root.insert("inputs".into(), Value::Object(self.inputs.clone()));
        root.insert("results".into(), Value::Object(self.results.clone()));
        root.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::String).collect()),
        );
        Value::Object(root)
    }

    /// Prints `text` (or the JSON record under `--json`) to stdout and
    /// writes the record to `out` when given. Warnings go to stderr in
    /// text mode; in JSON mode they are already part of the record.
    pub fn emit(&self, json: bool, out: Option<&Path>, text: &str) -> anyhow::Result<()> {
        let encoded = serde_json::to_string(&self.to_value()).expect("record serializes");
        if json {
            println!("{encoded}");
        } else {
            print!("{text}");
            for warning in &self.warnings {
                eprintln!("warning: {warning}");
            }
        }
        if let Some(path) = out {
            std::fs::write(path, format!("{encoded}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}
