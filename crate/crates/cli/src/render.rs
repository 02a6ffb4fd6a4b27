use std::io::Write;

use serde_json::Value;

use crate::args::Format;

/// Output of a command in every supported format.
pub struct Rendered {
    pub json: Value,
    pub table: String,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
}

/// Numbers become decimal strings; used for exact-mode JSON.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

pub fn emit(out: &Rendered, format: Format, exact: bool) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match format {
        Format::Json => {
            let v = if exact { stringify_numbers(out.json.clone()) } else { out.json.clone() };
            serde_json::to_writer_pretty(&mut lock, &v)?;
            writeln!(lock)?;
        }
        Format::Table => write!(lock, "{}", out.table)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(lock);
            w.write_record(&out.csv_header)?;
            for r in &out.csv_rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Left-aligned first column, right-aligned rest.
pub fn align(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (s, &w))| {
                let pad = w - s.chars().count();
                if c == 0 {
                    format!("{s}{}", " ".repeat(pad))
                } else {
                    format!("{}{s}", " ".repeat(pad))
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// `key: value` lines.
pub fn pairs(items: &[(&str, String)]) -> String {
    let w = items.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    items.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
}
