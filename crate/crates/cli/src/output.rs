use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;
use specht_core::exact::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned, human-readable text.
    Text,
    /// One JSON object per line.
    Records,
}

/// Text rendering of a record.
pub trait Render {
    fn render(&self) -> String;
}

pub fn emit<W: Write, R: Serialize + Render>(out: &mut W, format: Format, rec: &R) -> io::Result<()> {
    match format {
        Format::Text => {
            let text = rec.render();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
        Format::Records => {
            serde_json::to_writer(&mut *out, rec).map_err(io::Error::other)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Integers become JSON numbers, anything else a string.
pub fn scalar_value(s: &Scalar) -> Value {
    match s.to_i64() {
        Some(n) => Value::from(n),
        None => Value::from(s.to_string()),
    }
}

pub fn scalar_row(values: &[Scalar]) -> Vec<Value> {
    values.iter().map(scalar_value).collect()
}

pub fn join_values(values: &[Value]) -> String {
    values
        .iter()
        .map(|v| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned `key  value` lines.
pub fn kv(lines: &[(&str, String)]) -> String {
    let w = lines.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in lines {
        s.push_str(&format!("{k:<w$}  {v}\n"));
    }
    s
}
