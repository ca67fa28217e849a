use serde_json::Value;

use crate::args::Format;

/// Renders one report record as a single line of JSON or as `key: value` text.
pub fn render(record: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{record}\n"),
        Format::Text => text(record),
    }
}

fn text(record: &Value) -> String {
    let Value::Object(map) = record else {
        return format!("{record}\n");
    };
    let mut out = String::new();
    for (k, v) in map {
        match v {
            Value::String(s) if s.contains('\n') => {
                out.push_str(&format!("{k}:\n"));
                for line in s.lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            }
            Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
            Value::Null => out.push_str(&format!("{k}: -\n")),
            other => out.push_str(&format!("{k}: {other}\n")),
        }
    }
    out.push('\n');
    out
}

/// Removes wall-clock fields (`stages`) from every nested object.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("stages");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
