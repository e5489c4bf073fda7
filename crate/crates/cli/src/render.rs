//! Human-readable rendering of command results.

use std::io::{ErrorKind, Write};

use serde_json::Value;

use crate::Format;

/// Bulky fields left out of tables.
const HIDDEN: [&str; 2] = ["map", "witness"];

pub fn print(v: &Value, format: Format) -> regmap::Result<()> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(v)? + "\n",
        Format::Table => table(v),
    };
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object()) => {
            let inner: Vec<String> = xs.iter().map(scalar).collect();
            format!("[{}]", inner.join(","))
        }
        other => other.to_string(),
    }
}

/// Dotted keys for nested objects, in insertion order.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if HIDDEN.contains(&k.as_str()) {
                    continue;
                }
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), v.clone())),
    }
}

fn table(v: &Value) -> String {
    let mut fields = Vec::new();
    flatten("", v, &mut fields);
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, x) in fields {
        match x {
            Value::Array(rows) if rows.iter().any(Value::is_object) => {
                out += &rows_table(&k, &rows)
            }
            _ => out += &format!("{k:<width$}  {}\n", scalar(&x)),
        }
    }
    out
}

fn rows_table(name: &str, rows: &[Value]) -> String {
    let flat: Vec<Vec<(String, Value)>> = rows
        .iter()
        .map(|r| {
            let mut f = Vec::new();
            flatten("", r, &mut f);
            f
        })
        .collect();
    let Some(first) = flat.first() else {
        return format!("{name}: none\n");
    };
    let header: Vec<String> = first.iter().map(|(k, _)| k.clone()).collect();
    let cells: Vec<Vec<String>> = flat
        .iter()
        .map(|f| f.iter().map(|(_, x)| scalar(x)).collect())
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            cells
                .iter()
                .map(|c| c.get(i).map_or(0, String::len))
                .chain([header[i].len()])
                .max()
                .unwrap()
        })
        .collect();
    let line = |row: &[String]| {
        let padded: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = format!("{name}:\n");
    out += &line(&header);
    for c in &cells {
        out += &line(c);
    }
    out
}
