//! Rendering of run reports as JSON or plain text.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format '{s}' (expected json or text)")),
        }
    }
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let items = v.as_array()?;
    let parts = items.iter().map(inline).collect::<Option<Vec<_>>>()?;
    if items.iter().any(Value::is_array) {
        Some(format!("[{}]", parts.join("; ")))
    } else {
        Some(parts.join(" "))
    }
}

fn block(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = inline(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                block(out, k, x, depth + 1);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                block(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

fn text(report: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!("nckit report, schema {}\n", report["schema"]));
    if let Some(n) = report["name"].as_str() {
        out.push_str(&format!("job: {n}\n"));
    }
    block(&mut out, "environment", &report["environment"], 0);
    if let Some(m) = report["analyses"].as_object() {
        for (k, v) in m {
            out.push('\n');
            out.push_str(&format!("== {k} ==\n"));
            if let Some(fields) = v.as_object() {
                for (f, x) in fields {
                    block(&mut out, f, x, 0);
                }
            }
        }
    }
    out.push('\n');
    block(&mut out, "cross_check", &report["cross_check"], 0);
    block(&mut out, "undecided", &report["undecided"], 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_tabulates_arrays_inline() {
        let r = json!({
            "schema": 1,
            "name": null,
            "environment": {"degree_bound": 4},
            "analyses": {"hilbert": {"dims": [1, 2, 3], "growth": {"gkdim": "2"}}},
            "cross_check": {"status": "NOT_APPLICABLE"},
            "undecided": [],
        });
        let t = render(&r, Format::Text);
        assert!(t.contains("dims: 1 2 3\n"));
        assert!(t.contains("== hilbert ==\n"));
        assert!(t.contains("  gkdim: 2\n"));
        assert!(render(&r, Format::Json).ends_with("}\n"));
    }
}
