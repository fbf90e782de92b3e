use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

/// Output of one subcommand. Keys serialize sorted because `serde_json::Map`
/// is a `BTreeMap` without the `preserve_order` feature.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub results: Value,
    pub pass: bool,
    pub elapsed_ms: u64,
    /// Column names and rows for `--format csv`, when the command has a table.
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let value = json!({
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "pass": self.pass,
            "elapsed_ms": self.elapsed_ms,
        });
        let mut s = serde_json::to_string_pretty(&value).expect("values are serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (k, v) in &self.params {
            writeln!(out, "  {k} = {}", scalar(v)).unwrap();
        }
        write_text(&mut out, "results", &self.results, 0);
        writeln!(out, "pass: {}", self.pass).unwrap();
        writeln!(out, "elapsed_ms: {}", self.elapsed_ms).unwrap();
        out
    }

    pub fn to_csv(&self) -> Option<String> {
        let (header, rows) = self.table.as_ref()?;
        let mut out = header.join(",");
        out.push('\n');
        for row in rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        Some(out)
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) if !map.is_empty() => {
            writeln!(out, "{pad}{key}:").unwrap();
            for (k, v) in map {
                write_text(out, k, v, depth + 1);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            writeln!(out, "{pad}{key}: ({} items)", items.len()).unwrap();
            for (i, item) in items.iter().enumerate() {
                write_text(out, &format!("[{i}]"), item, depth + 1);
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            writeln!(out, "{pad}{key}: [{}]", joined.join(", ")).unwrap();
        }
        other => writeln!(out, "{pad}{key}: {}", scalar(other)).unwrap(),
    }
}

/// Bignums always go out as decimal strings.
pub fn big(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn bigs(ns: &[BigInt]) -> Value {
    Value::Array(ns.iter().map(big).collect())
}
