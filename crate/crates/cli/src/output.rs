//! Rendering of reports. JSON goes through `serde_json::Value`, whose maps are ordered by
//! key, so the same report always prints the same bytes.

use std::path::Path;
use std::time::Duration;

use serde_json::{json, Value};

use crate::{CliError, Format, Settings};

pub struct Report {
    pub payload: Value,
    pub verdict: bool,
    /// Header row first. Only count tables have one.
    pub csv: Option<Vec<Vec<String>>>,
}

pub fn extension(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Table => "txt",
    }
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.payload)
                .map_err(|e| CliError::Usage(format!("serialization: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let rows = report
                .csv
                .as_ref()
                .ok_or_else(|| CliError::Usage("csv output is only available for count tables".into()))?;
            Ok(rows.iter().map(|r| csv_line(r) + "\n").collect())
        }
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", &report.payload, &mut rows);
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            Ok(rows
                .into_iter()
                .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                .collect())
        }
    }
}

fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// One row per scalar, keyed by its path. Arrays of scalars stay on one row.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        _ => out.push((prefix.to_string(), v.to_string())),
    }
}

pub fn metadata(
    command: &str,
    scenario: Option<&Path>,
    settings: &Settings,
    verdict: bool,
    elapsed: Duration,
) -> String {
    let meta = json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "scenario": scenario.map(|p| p.display().to_string()),
        "workers": settings.workers,
        "budget": settings.budget.limit().to_string(),
        "verdict": verdict,
        "elapsed_seconds": elapsed.as_secs_f64(),
    });
    serde_json::to_string_pretty(&meta).expect("metadata serializes") + "\n"
}
