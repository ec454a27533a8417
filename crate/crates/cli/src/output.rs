//! Rendering reports as text, JSON or CSV.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Human readable rendering.
pub trait TextReport {
    fn text(&self) -> String;
}

pub fn render<R: Serialize + TextReport>(report: &R, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Text => report.text(),
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Csv => key_value_csv(&serde_json::to_value(report)?)?,
    })
}

/// `key,value` rows with nested fields joined by dots. Arrays of scalars
/// are kept as JSON text in a single cell.
pub fn key_value_csv(v: &Value) -> anyhow::Result<String> {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"])?;
    for (k, v) in rows {
        w.write_record([k, v])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Null => out.push((prefix.into(), String::new())),
        Value::String(s) => out.push((prefix.into(), s.clone())),
        other => out.push((prefix.into(), other.to_string())),
    }
}

/// `Some(x)` as text, `None` as `-`.
pub fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".into(), |v| v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_objects_flatten_with_dots() {
        let v = serde_json::json!({"a": 1, "b": {"c": null, "d": "x"}, "e": [1, 2]});
        let s = key_value_csv(&v).unwrap();
        assert_eq!(s, "key,value\na,1\nb.c,\nb.d,x\ne,\"[1,2]\"\n");
    }
}
