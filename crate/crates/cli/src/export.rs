//! Tabular export: CSV and JSON-lines, plus a metadata sidecar.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{Map, Number, Value};

use crate::config::OutputFormat;
use crate::runner::{RunOutput, SweepRecord};

/// Render a value with 12 significant digits, plain decimal notation.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Write the averaged records in the requested format and drop a
/// `<path>.meta.json` sidecar next to the table.
pub fn export(output: &RunOutput, path: &Path, format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(output, path)?,
        OutputFormat::JsonLines => write_jsonl(output, path)?,
    }
    let meta_path = sidecar_path(path);
    fs::write(&meta_path, serde_json::to_string_pretty(&output.metadata)? .as_bytes())?;
    Ok(())
}

pub fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    path.with_file_name(name)
}

fn write_csv(output: &RunOutput, path: &Path) -> io::Result<()> {
    let file = fs::File::create(path)?;
    let mut w = io::BufWriter::new(file);
    let mut header = vec!["t".to_string(), "c1".into(), "c2".into(), "c3".into()];
    for col in &output.columns {
        header.push(col.clone());
        header.push(format!("{col}_status"));
    }
    writeln!(w, "{}", header.join(","))?;
    for rec in &output.records {
        let mut fields = vec![
            format_sig(rec.t),
            format_sig(rec.c1),
            format_sig(rec.c2),
            format_sig(rec.c3),
        ];
        for (v, status) in &rec.values {
            fields.push(format_sig(*v));
            fields.push(status.id().to_string());
        }
        writeln!(w, "{}", fields.join(","))?;
    }
    w.flush()
}

/// One JSON object per record; field names match the CSV columns and the
/// floats carry full precision, so parsing a line back reproduces the
/// record bit-exactly.
fn write_jsonl(output: &RunOutput, path: &Path) -> io::Result<()> {
    let file = fs::File::create(path)?;
    let mut w = io::BufWriter::new(file);
    for rec in &output.records {
        writeln!(w, "{}", record_to_json(rec, &output.columns))?;
    }
    w.flush()
}

pub fn record_to_json(rec: &SweepRecord, columns: &[String]) -> Value {
    let mut map = Map::new();
    let num = |v: f64| Number::from_f64(v).expect("finite measure value");
    map.insert("t".into(), Value::Number(num(rec.t)));
    map.insert("c1".into(), Value::Number(num(rec.c1)));
    map.insert("c2".into(), Value::Number(num(rec.c2)));
    map.insert("c3".into(), Value::Number(num(rec.c3)));
    for (col, (v, status)) in columns.iter().zip(&rec.values) {
        map.insert(col.clone(), Value::Number(num(*v)));
        map.insert(format!("{col}_status"), Value::String(status.id().into()));
    }
    Value::Object(map)
}
