use serde::Serialize;
use serde_json::Value;

use orbivol::{Error, Result};

use crate::Format;

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Domain(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Domain(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn markdown(headers: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = format!("| {} |\n", headers.join(" | "));
    s.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    s
}

/// Scalar leaves of a JSON tree as `(dotted.key, text)`; arrays stay inline as JSON.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// A single record: pretty JSON, a one-row CSV, or a key/value Markdown table.
pub fn record<T: Serialize>(value: &T, format: Format) -> Result<String> {
    if format == Format::Json {
        return Ok(json(value));
    }
    let tree = serde_json::to_value(value).expect("reports serialize");
    let mut fields = Vec::new();
    flatten("", &tree, &mut fields);
    Ok(match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Domain(format!("csv: {e}"));
            w.write_record(fields.iter().map(|f| f.0.as_str())).map_err(io)?;
            w.write_record(fields.iter().map(|f| f.1.as_str())).map_err(io)?;
            String::from_utf8(w.into_inner().map_err(|e| Error::Domain(format!("csv: {e}")))?).expect("utf-8")
        }
        _ => markdown(&["key", "value"], fields.into_iter().map(|(k, v)| vec![k, v])),
    })
}
