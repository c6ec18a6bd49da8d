//! Run records: the versioned, machine-readable envelope every subcommand
//! emits, plus JSON/CSV rendering.
//!
//! JSON objects are serialized with sorted keys (serde_json's default map),
//! so identical inputs produce byte-identical documents apart from the
//! timestamp.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use sdc_core::ComplexMatrix4;

/// Bumped whenever the output layout changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    /// ISO-8601 UTC; the only field excluded from reproducibility checks.
    pub timestamp: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub params: Value,
    pub outputs: Value,
}

impl RunRecord {
    pub fn new(command: &str, seed: Option<u64>, params: Value, outputs: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            seed,
            params,
            outputs,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }

    /// Flatten the record into `key,value` CSV rows (header included).
    /// Nested objects and arrays become dotted / indexed paths.
    pub fn to_csv(&self) -> String {
        let mut rows = vec![(
            "schema_version".to_string(),
            self.schema_version.to_string(),
        )];
        rows.push(("tool_version".to_string(), self.tool_version.clone()));
        rows.push(("command".to_string(), self.command.clone()));
        rows.push(("timestamp".to_string(), self.timestamp.clone()));
        if let Some(seed) = self.seed {
            rows.push(("seed".to_string(), seed.to_string()));
        }
        flatten("params", &self.params, &mut rows);
        flatten("outputs", &self.outputs, &mut rows);

        let mut out = String::from("key,value\n");
        for (k, v) in rows {
            out.push_str(&k);
            out.push(',');
            out.push_str(&v);
            out.push('\n');
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&format!("{prefix}.{k}"), v, rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), v, rows);
            }
        }
        Value::Null => rows.push((prefix.to_string(), String::new())),
        Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
        Value::Number(n) => rows.push((prefix.to_string(), n.to_string())),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
    }
}

/// A 4×4 complex matrix as nested arrays of [re, im] pairs.
pub fn matrix_value(m: &ComplexMatrix4) -> Value {
    Value::Array(
        (0..4)
            .map(|i| {
                Value::Array(
                    (0..4)
                        .map(|j| {
                            let c = m.get(i, j);
                            json!([c.re, c.im])
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

/// `None` → JSON null (finite values only; callers map ±∞ to null first).
pub fn optional_number(v: Option<f64>) -> Value {
    match v {
        Some(x) if x.is_finite() => json!(x),
        _ => Value::Null,
    }
}
