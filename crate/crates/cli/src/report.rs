//! Text and JSON rendering of session results.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
    AssertionFailed,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Error => "error",
            Status::AssertionFailed => "assertion_failed",
        }
    }
}

/// One result per command, in command order.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: String,
    pub status: Status,
    pub fields: Map<String, Value>,
    pub timing_ms: Option<u128>,
}

impl Outcome {
    pub fn new(command: String, status: Status, fields: Map<String, Value>) -> Self {
        Outcome {
            command,
            status,
            fields,
            timing_ms: None,
        }
    }

    pub fn message(command: String, status: Status, message: String) -> Self {
        let mut fields = Map::new();
        fields.insert("message".into(), message.into());
        Outcome::new(command, status, fields)
    }
}

/// Integers beyond `2^53` do not survive a trip through an IEEE double, so
/// they are written as decimal strings.
pub fn int<T: Into<i128>>(v: T) -> Value {
    const SAFE: i128 = 1 << 53;
    let v: i128 = v.into();
    if v.abs() <= SAFE {
        json!(v as i64)
    } else {
        Value::String(v.to_string())
    }
}

pub fn to_json(results: &[Outcome]) -> String {
    let results: Vec<Value> = results
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("command".into(), r.command.clone().into());
            m.insert("status".into(), r.status.name().into());
            for (k, v) in &r.fields {
                m.insert(k.clone(), v.clone());
            }
            if let Some(t) = r.timing_ms {
                m.insert("timing_ms".into(), int(t as i128));
            }
            Value::Object(m)
        })
        .collect();
    let doc = json!({ "version": 1, "results": results });
    let mut s = serde_json::to_string_pretty(&doc).expect("values are serializable");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(m) => {
            let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}: {}", scalar(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

pub fn to_text(results: &[Outcome]) -> String {
    let mut s = String::new();
    for (k, r) in results.iter().enumerate() {
        if k > 0 {
            s.push('\n');
        }
        let _ = writeln!(s, "[{}] {}", k + 1, r.command);
        let _ = writeln!(s, "  status: {}", r.status.name());
        for (key, v) in &r.fields {
            match v {
                Value::Array(items) if items.iter().any(Value::is_object) => {
                    let _ = writeln!(s, "  {key}:");
                    for item in items {
                        let _ = writeln!(s, "    - {}", scalar(item));
                    }
                }
                _ => {
                    let _ = writeln!(s, "  {key}: {}", scalar(v));
                }
            }
        }
        if let Some(t) = r.timing_ms {
            let _ = writeln!(s, "  timing_ms: {t}");
        }
    }
    s
}
