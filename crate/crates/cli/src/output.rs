use std::io::Write;
use std::path::Path;

use serde_json::{Map, Number, Value};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "hyrobin.report/1";

/// Rounds to `digits` significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let y: f64 = format!("{:.*e}", digits - 1, x).parse().expect("formatted float parses");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Shortest representation of `x` after rounding, as JSON prints it.
pub fn fmt_float(x: f64, digits: usize) -> String {
    let y = round_sig(x, digits);
    if y.is_finite() {
        Value::from(y).to_string()
    } else if y.is_nan() {
        "nan".into()
    } else if y > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Applies [`round_sig`] to every float in the tree. Integers are left alone.
pub fn round_value(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(0.0);
            *v = Number::from_f64(round_sig(x, digits)).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_value(x, digits)),
        Value::Object(map) => map.values_mut().for_each(|x| round_value(x, digits)),
        _ => {}
    }
}

/// `{schema_version, config, ...body}` with floats rounded, pretty-printed, newline-terminated.
pub fn document(config: Value, body: Map<String, Value>, digits: usize) -> String {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), SCHEMA_VERSION.into());
    doc.insert("config".into(), config);
    doc.extend(body);
    let mut doc = Value::Object(doc);
    round_value(&mut doc, digits);
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    text.push('\n');
    text
}

pub fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
