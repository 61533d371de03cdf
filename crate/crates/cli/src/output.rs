use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize"),
        Format::Text => {
            let mut out = String::new();
            text(report, 0, &mut out);
            out.trim_end().to_string()
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    if let Some(t) = tensor(v) {
        return Some(t);
    }
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if !items.is_empty() && items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

/// Matrices as nested rows, other tensors as `idx=val` lists.
fn tensor(v: &Value) -> Option<String> {
    let map = v.as_object()?;
    if map.len() < 2 || !map.contains_key("shape") || !map.contains_key("entries") {
        return None;
    }
    let shape: Vec<usize> =
        map["shape"].as_array()?.iter().map(|x| x.as_u64().map(|n| n as usize)).collect::<Option<_>>()?;
    let entries: Vec<(Vec<usize>, String)> = map["entries"]
        .as_array()?
        .iter()
        .map(|e| {
            let idx = e["idx"].as_array()?.iter().map(|x| x.as_u64().map(|n| n as usize)).collect::<Option<_>>()?;
            Some((idx, e["val"].as_str()?.to_string()))
        })
        .collect::<Option<_>>()?;
    if shape.len() == 2 {
        let rows: Vec<String> = (1..=shape[0])
            .map(|i| {
                let row: Vec<&str> = (1..=shape[1])
                    .map(|j| entries.iter().find(|(idx, _)| idx[..] == [i, j]).map_or("0", |(_, v)| v.as_str()))
                    .collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        return Some(format!("[{}]", rows.join(", ")));
    }
    let parts: Vec<String> = entries
        .iter()
        .map(|(idx, v)| format!("{}={v}", idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    Some(format!("{{{}}}", parts.join("; ")))
}

/// Indented `key: value` lines; list items are numbered from 1.
fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None if is_empty(x) => out.push_str(&format!("{pad}{k}: (none)\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{}. {s}\n", i + 1)),
                    None => {
                        out.push_str(&format!("{pad}{}.\n", i + 1));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn is_empty(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.is_empty(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_projection() {
        let v = json!({"verdict": "verified", "checks": [{"name": "x", "ok": true}], "empty": [], "dims": [1, 2]});
        assert_eq!(
            render(&v, Format::Text),
            "checks:\n  1.\n    name: x\n    ok: true\ndims: [1, 2]\nempty: (none)\nverdict: verified"
        );
        let m = json!({"shape": [2, 2], "entries": [{"idx": [1, 2], "val": "1"}, {"idx": [2, 1], "val": "-1"}]});
        assert_eq!(render(&json!({ "E": m }), Format::Text), "E: [[0, 1], [-1, 0]]");
    }
}
