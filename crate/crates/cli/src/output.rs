//! Report envelopes and their JSON, text and CSV renderings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::commands::{CommandError, Outcome};

pub const SCHEMA_VERSION: u64 = 1;

pub struct Report(Value);

impl Report {
    pub fn success(command: &str, outcome: Outcome, timing_ms: u64) -> Self {
        Self(json!({
            "schema_version": SCHEMA_VERSION,
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "status": if outcome.undetermined { "undetermined" } else { "ok" },
            "input": outcome.input,
            "parameters": outcome.parameters,
            "result": outcome.result,
            "timing_ms": timing_ms,
        }))
    }

    pub fn failure(command: &str, error: &CommandError, timing_ms: u64) -> Self {
        Self(json!({
            "schema_version": SCHEMA_VERSION,
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "status": "error",
            "error": { "kind": error.kind(), "message": error.to_string() },
            "timing_ms": timing_ms,
        }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.0).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let obj = self.0.as_object().expect("reports are objects");
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", obj["command"].as_str().unwrap_or(""), obj["status"].as_str().unwrap_or(""));
        if let Some(err) = obj.get("error") {
            let _ = writeln!(out, "  {}: {}", err["kind"].as_str().unwrap_or(""), err["message"].as_str().unwrap_or(""));
        }
        for section in ["parameters", "result"] {
            if let Some(Value::Object(map)) = obj.get(section) {
                if !map.is_empty() {
                    let _ = writeln!(out, "{section}:");
                    render_fields(&mut out, map);
                }
            }
        }
        let _ = write!(out, "time: {} ms", obj["timing_ms"]);
        out
    }
}

const TEXT_WIDTH: usize = 100;

fn render_fields(out: &mut String, map: &Map<String, Value>) {
    for (key, value) in map {
        let mut line = match value {
            Value::String(s) => s.clone(),
            Value::Array(items) if items.len() > 8 && items.iter().all(Value::is_array) => {
                format!("{} entries", items.len())
            }
            other => other.to_string(),
        };
        if line.len() > TEXT_WIDTH {
            line.truncate(line.char_indices().nth(TEXT_WIDTH).map_or(line.len(), |(i, _)| i));
            line.push_str(" ...");
        }
        let _ = writeln!(out, "  {key}: {line}");
    }
}

/// CSV with a header row; every row must match the header's width.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn point_header(n: usize, with_value: bool) -> Vec<String> {
    let mut h: Vec<String> = match n {
        1..=3 => ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    if with_value {
        h.push("value".into());
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows_follow_header() {
        let header = point_header(2, true);
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let text = csv(&header, vec![vec![0.5, -1.0, 1.0]]);
        assert_eq!(text, "x,y,value\n0.5,-1,1\n");
    }

    #[test]
    fn long_arrays_are_summarized_in_text() {
        let points: Vec<Value> = (0..20).map(|i| json!([i, 0])).collect();
        let mut map = Map::new();
        map.insert("points".into(), Value::Array(points));
        let mut out = String::new();
        render_fields(&mut out, &map);
        assert_eq!(out, "  points: 20 entries\n");
    }
}
