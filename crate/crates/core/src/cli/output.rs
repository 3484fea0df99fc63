//! Rendering reports as JSON, CSV or plain text, and numeric evaluation of
//! the scalars they contain.

use num_rational::BigRational;
use serde_json::{Map, Value};

use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn is_scalar(map: &Map<String, Value>) -> bool {
    map.len() == 2 && map.get("num").is_some_and(Value::is_array) && map.get("den").is_some_and(Value::is_array)
}

/// Replace every serialized `Scalar` inside `v` by its value at `q = q0`,
/// written as a rational string (`"undefined"` at a pole).
pub fn evaluate_scalars(v: &mut Value, q0: &BigRational) {
    match v {
        Value::Object(map) if is_scalar(map) => {
            let s: Option<Scalar> = serde_json::from_value(Value::Object(map.clone())).ok();
            *v = match s.map(|s| s.eval(q0)) {
                Some(Ok(r)) => Value::String(r.to_string()),
                _ => Value::String("undefined".into()),
            };
        }
        Value::Object(map) => map.values_mut().for_each(|x| evaluate_scalars(x, q0)),
        Value::Array(xs) => xs.iter_mut().for_each(|x| evaluate_scalars(x, q0)),
        _ => {}
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Object(map) if is_scalar(map) => serde_json::from_value::<Scalar>(v.clone()).map_or_else(|_| v.to_string(), |s| s.to_string()),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    let s = cell(v);
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// First field of `data` holding an array of objects, used as the table.
fn table(data: &Value) -> Option<(&str, &Vec<Value>)> {
    data.as_object()?.iter().find_map(|(k, v)| {
        let rows = v.as_array()?;
        (!rows.is_empty() && rows.iter().all(Value::is_object)).then_some((k.as_str(), rows))
    })
}

fn columns(rows: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("object rows").keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report),
        Format::Text => render_text(report),
    }
}

fn render_csv(report: &Report) -> String {
    let mut out = String::new();
    if let Some((_, rows)) = table(&report.data) {
        let cols = columns(rows);
        out.push_str(&cols.join(","));
        out.push('\n');
        for r in rows {
            let line: Vec<String> = cols.iter().map(|c| csv_cell(r.get(c).unwrap_or(&Value::Null))).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        return out;
    }
    out.push_str("key,value\n");
    out.push_str(&format!("check,{}\npass,{}\n", report.check, report.pass));
    if let Some(map) = report.data.as_object() {
        for (k, v) in map {
            out.push_str(&format!("{},{}\n", csv_cell(&Value::String(k.clone())), csv_cell(v)));
        }
    }
    out
}

fn render_text(report: &Report) -> String {
    let mut out = format!("{}: {}\n", report.check, if report.pass { "pass" } else { "FAIL" });
    out.push_str(&format!("params: {}\n", report.params));
    let Some(map) = report.data.as_object() else {
        out.push_str(&format!("{}\n", cell(&report.data)));
        return out;
    };
    let tab = table(&report.data).map(|(k, _)| k.to_string());
    for (k, v) in map {
        if Some(k) == tab.as_ref() {
            continue;
        }
        out.push_str(&format!("{k}: {}\n", cell(v)));
    }
    if let Some((name, rows)) = table(&report.data) {
        let cols = columns(rows);
        let cells: Vec<Vec<String>> =
            rows.iter().map(|r| cols.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null))).collect()).collect();
        let widths: Vec<usize> = (0..cols.len())
            .map(|j| cells.iter().map(|r| r[j].chars().count()).chain([cols[j].len()]).max().unwrap_or(0))
            .collect();
        out.push_str(&format!("{name}:\n"));
        let fmt_row = |r: &[String]| -> String {
            let parts: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            format!("  {}\n", parts.join("  ").trim_end())
        };
        out.push_str(&fmt_row(&cols));
        for r in &cells {
            out.push_str(&fmt_row(r));
        }
    }
    out
}
