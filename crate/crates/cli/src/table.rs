//! Plain-text rendering of a report.

use serde_json::Value;

pub fn render(report: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = report {
        for (k, v) in map {
            if k == "results" {
                continue;
            }
            out.push_str(&format!("{k}: {}\n", scalar(v)));
        }
        if let Some(results) = map.get("results") {
            out.push('\n');
            block(results, &mut out);
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn block(v: &Value, out: &mut String) {
    match v {
        Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => rows_table(rows, out),
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, v) in map {
                match v {
                    Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
                        out.push_str(&format!("{k}:\n"));
                        rows_table(rows, out);
                    }
                    Value::Object(_) => {
                        out.push_str(&format!("{k}:\n"));
                        let mut inner = String::new();
                        block(v, &mut inner);
                        for line in inner.lines() {
                            out.push_str(&format!("  {line}\n"));
                        }
                    }
                    _ => out.push_str(&format!("{k:<width$}  {}\n", scalar(v))),
                }
            }
        }
        other => out.push_str(&format!("{}\n", scalar(other))),
    }
}

fn rows_table(rows: &[Value], out: &mut String) {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("object rows").keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).map(scalar).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|row| row[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |items: &[String]| {
        items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    out.push_str(&line(&cols));
    out.push('\n');
    for row in &cells {
        out.push_str(&line(row));
        out.push('\n');
    }
}
