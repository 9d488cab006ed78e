//! Report envelope and renderers.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use cubecomb::dilworth::RamseyBound;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Where the complex came from, and the digest of exactly those bytes.
#[derive(Debug, Clone)]
pub struct InputId {
    pub source: String,
    pub sha256: String,
}

impl InputId {
    pub fn new(source: String, bytes: &[u8]) -> Self {
        InputId {
            source,
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

pub fn envelope(command: &str, input: &InputId, seed: u64, ramsey: &[RamseyBound], result: Value) -> Value {
    let bounds: Vec<Value> = ramsey
        .iter()
        .map(|r| {
            json!({
                "s": r.s,
                "t": r.t,
                "value": r.value,
                "provenance": if r.exact { "exact" } else { "upper_bound" },
            })
        })
        .collect();
    json!({
        "command": command,
        "tool": { "name": "cubecomb", "version": env!("CARGO_PKG_VERSION") },
        "input": { "source": input.source, "sha256": input.sha256 },
        "seed": seed,
        "ramsey_bounds": bounds,
        "result": result,
    })
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text(value, "", &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => Some(
            items
                .iter()
                .map(|i| scalar(i).unwrap())
                .collect::<Vec<_>>()
                .join(", "),
        ),
        Value::Array(items) if items.iter().all(|i| i.as_array().is_some_and(|a| a.iter().all(|x| !x.is_object() && !x.is_array()))) => {
            Some(
                items
                    .iter()
                    .map(|i| format!("({})", scalar(i).unwrap()))
                    .collect::<Vec<_>>()
                    .join(" "),
            )
        }
        _ => None,
    }
}

fn text(v: &Value, path: &str, out: &mut String) {
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{path:<40} {s}\n"));
        return;
    }
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                text(x, &join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                text(x, &join(&i.to_string()), out);
            }
        }
        _ => unreachable!(),
    }
}

pub fn error_value(code: &str, message: &str, detail: Option<Value>) -> Value {
    let mut m = Map::new();
    m.insert("code".into(), json!(code));
    m.insert("message".into(), json!(message));
    if let Some(d) = detail {
        m.insert("detail".into(), d);
    }
    json!({ "error": Value::Object(m) })
}
