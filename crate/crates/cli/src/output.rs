//! Rendering of JSON reports as JSON, TSV or plain text.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

/// Leaf values keyed by dotted path, in document order. Arrays of scalars
/// stay whole.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn walk(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if path.is_empty() {
            k.to_string()
        } else {
            format!("{path}.{k}")
        }
    };
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                walk(x, join(k), out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                walk(x, join(&i.to_string()), out);
            }
        }
        other => out.push((path, scalar(other))),
    }
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("JSON values serialize"),
        Format::Tsv => {
            let mut s = String::from("key\tvalue\n");
            for (k, x) in flatten(v) {
                s.push_str(&format!("{k}\t{x}\n"));
            }
            s
        }
        Format::Text => {
            let rows = flatten(v);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            rows.iter()
                .map(|(k, x)| format!("{k:width$}  {x}\n"))
                .collect()
        }
    }
}

/// One line per check, then a summary line.
pub fn verify_text(v: &Value) -> String {
    let mut s = String::new();
    if let Some(checks) = v["checks"].as_array() {
        let width = checks
            .iter()
            .filter_map(|c| c["id"].as_str())
            .map(str::len)
            .max()
            .unwrap_or(0);
        for c in checks {
            s.push_str(&format!(
                "{:width$}  {:22}  {}\n",
                scalar(&c["id"]),
                scalar(&c["status"]),
                scalar(&c["details"])
            ));
        }
    }
    let sum = &v["summary"];
    s.push_str(&format!(
        "pass {}, fail {}, documented discrepancies {}\n",
        sum["pass"], sum["fail"], sum["documented_discrepancy"]
    ));
    s
}
