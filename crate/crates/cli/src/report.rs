use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

/// Failure attributed to one command-line argument.
#[derive(Debug)]
pub struct CliError {
    pub arg: String,
    pub message: String,
}

impl CliError {
    pub fn new(arg: &str, message: impl fmt::Display) -> Self {
        Self {
            arg: arg.to_string(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "--{}: {}", self.arg, self.message)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Attaches an argument name to library errors.
pub trait Blame<T> {
    fn blame(self, arg: &str) -> CliResult<T>;
}

impl<T, E: fmt::Display> Blame<T> for Result<T, E> {
    fn blame(self, arg: &str) -> CliResult<T> {
        self.map_err(|e| CliError::new(arg, e))
    }
}

/// Command outputs plus the verdict that drives the exit code.
pub struct Outcome {
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub ok: bool,
}

impl Outcome {
    pub fn new(inputs: Value, outputs: Value, ok: bool) -> Self {
        let as_map = |v: Value| match v {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Self {
            inputs: as_map(inputs),
            outputs: as_map(outputs),
            ok,
        }
    }
}

pub fn rational(r: &BigRational) -> Value {
    json!({
        "exact": format!("{}/{}", r.numer(), r.denom()),
        "approx": r.to_f64(),
    })
}

/// JSON number when it fits in `i64`, decimal string otherwise.
pub fn integer(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn assemble(command: &str, outcome: &Outcome, elapsed_ms: Option<f64>) -> Value {
    let mut top = outcome.outputs.clone();
    top.insert("schema_version".into(), json!(SCHEMA_VERSION));
    top.insert("command".into(), json!(command));
    top.insert("inputs".into(), Value::Object(outcome.inputs.clone()));
    top.insert("ok".into(), json!(outcome.ok));
    if let Some(ms) = elapsed_ms {
        top.insert("timing".into(), json!({ "elapsed_ms": ms }));
    }
    Value::Object(top)
}

/// `key: value` lines with compact JSON for nested values.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = report {
        for (k, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                Value::Object(o) if o.contains_key("exact") && o.contains_key("approx") => {
                    format!("{} (~{})", o["exact"].as_str().unwrap_or_default(), o["approx"])
                }
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
    }
    out
}
