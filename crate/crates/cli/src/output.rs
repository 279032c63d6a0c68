use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::exec::{CommandResult, Row};
use crate::Failure;

pub fn render(result: &CommandResult, format: Format) -> Result<String, Failure> {
    match format {
        Format::Plain => Ok(plain(result)),
        Format::Json => Ok(format!("{}\n", to_json(result))),
        Format::Csv => csv_text(result),
    }
}

/// A field as it appears in plain and CSV output: lists comma-joined.
fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(flat).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn plain(result: &CommandResult) -> String {
    let mut out = String::new();
    match result {
        CommandResult::Rows(rows) if rows.len() == 1 => {
            out.push_str(&rows[0].value);
            out.push('\n');
        }
        CommandResult::Rows(rows) => {
            for row in rows {
                let label: Vec<String> = row
                    .fields
                    .iter()
                    .map(|(k, v)| format!("{k}={}", flat(v)))
                    .collect();
                out.push_str(&format!("{}: {}\n", label.join(" "), row.value));
            }
        }
        CommandResult::Record(fields) => {
            for (k, v) in fields {
                out.push_str(&format!("{k}: {}\n", flat(v)));
            }
        }
        CommandResult::Verify(reports) => {
            for rep in reports {
                out.push_str(&format!("{rep}\n"));
            }
        }
    }
    out
}

fn row_json(row: &Row) -> Value {
    let mut map = Map::new();
    for (k, v) in &row.fields {
        map.insert((*k).to_string(), v.clone());
    }
    map.insert("value".into(), json!(row.value));
    Value::Object(map)
}

fn to_json(result: &CommandResult) -> Value {
    match result {
        CommandResult::Rows(rows) if rows.len() == 1 => row_json(&rows[0]),
        CommandResult::Rows(rows) => Value::Array(rows.iter().map(row_json).collect()),
        CommandResult::Record(fields) => Value::Object(
            fields
                .iter()
                .map(|(k, v)| ((*k).to_string(), v.clone()))
                .collect(),
        ),
        CommandResult::Verify(reports) => json!({
            "passed": reports.iter().all(|r| r.passed()),
            "suites": reports.iter().map(|r| json!({
                "name": r.name,
                "passed": r.passed(),
                "checks": r.checks,
                "failures": r.failure_count,
                "messages": r.failures,
            })).collect::<Vec<_>>(),
        }),
    }
}

fn csv_text(result: &CommandResult) -> Result<String, Failure> {
    let (header, records): (Vec<String>, Vec<Vec<String>>) = match result {
        CommandResult::Rows(rows) => {
            let mut header: Vec<String> = rows
                .first()
                .map(|r| r.fields.iter().map(|(k, _)| k.to_string()).collect())
                .unwrap_or_default();
            header.push("value".into());
            let records = rows
                .iter()
                .map(|r| {
                    let mut rec: Vec<String> = r.fields.iter().map(|(_, v)| flat(v)).collect();
                    rec.push(r.value.clone());
                    rec
                })
                .collect();
            (header, records)
        }
        CommandResult::Record(fields) => (
            fields.iter().map(|(k, _)| k.to_string()).collect(),
            vec![fields.iter().map(|(_, v)| flat(v)).collect()],
        ),
        CommandResult::Verify(reports) => (
            ["suite", "passed", "checks", "failures"].map(String::from).to_vec(),
            reports
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        r.passed().to_string(),
                        r.checks.to_string(),
                        r.failure_count.to_string(),
                    ]
                })
                .collect(),
        ),
    };
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::usage(format!("csv output failed: {e}"));
    writer.write_record(&header).map_err(io)?;
    for rec in records {
        writer.write_record(&rec).map_err(io)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::usage(format!("csv output failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields is utf-8"))
}
