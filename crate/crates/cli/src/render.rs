use serde::Serialize;
use serde_json::Value;

pub fn json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string(report).expect("reports serialize");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Header plus one row of the report's top-level scalar fields. Nested
/// fields (histograms, value lists) only appear in JSON output.
pub fn csv_record<T: Serialize>(report: &T) -> String {
    let Value::Object(map) = serde_json::to_value(report).expect("reports serialize") else {
        panic!("reports serialize to objects");
    };
    let scalars: Vec<(&String, &Value)> = map.iter().filter(|(_, v)| !v.is_object() && !v.is_array()).collect();
    let header: Vec<&str> = scalars.iter().map(|(k, _)| k.as_str()).collect();
    let row: Vec<String> = scalars.iter().map(|(_, v)| cell(v)).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

pub fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

/// The same rows as an array of objects keyed by the header.
pub fn json_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let list: Vec<serde_json::Map<String, Value>> = rows
        .iter()
        .map(|r| {
            header
                .iter()
                .zip(r)
                .map(|(k, v)| {
                    let v = if v.is_empty() { Value::Null } else { Value::String(v.clone()) };
                    (k.to_string(), v)
                })
                .collect()
        })
        .collect();
    json(&list)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct R {
        x: u64,
        big: String,
        maybe: Option<f64>,
        hist: Vec<u32>,
    }

    #[test]
    fn record_skips_nested() {
        let r = R { x: 3, big: "12345678901234567890123".into(), maybe: None, hist: vec![1] };
        assert_eq!(csv_record(&r), "x,big,maybe\n3,12345678901234567890123,\n");
        assert_eq!(json(&r), "{\"x\":3,\"big\":\"12345678901234567890123\",\"maybe\":null,\"hist\":[1]}\n");
    }

    #[test]
    fn rows() {
        let rows = vec![vec!["0".to_string(), "1".to_string()], vec!["1".to_string(), String::new()]];
        assert_eq!(csv_rows(&["a", "b"], &rows), "a,b\n0,1\n1,\n");
        assert_eq!(json_rows(&["a", "b"], &rows), "[{\"a\":\"0\",\"b\":\"1\"},{\"a\":\"1\",\"b\":null}]\n");
    }
}
