use cubelab_circle::{CircleEstimate, Method};
use cubelab_dioph::CountReport;
use cubelab_matrix::IntMatrix;
use serde_json::Value;

use crate::config::{Config, Format};

/// One subcommand result, rendered in both encodings up front so emission
/// stays single-threaded and trivially deterministic.
pub struct Rendered {
    pub json: String,
    pub csv: String,
}

impl Rendered {
    pub fn print(&self, config: &Config) {
        match config.format {
            Format::Json => println!("{}", self.json),
            Format::Csv => print!("{}", self.csv),
        }
    }
}

/// Count payload. The engine report's partition count is dropped: it echoes
/// --threads, and identical invocations must stay bit-identical across
/// thread counts. Wall time is opt-in for the same reason.
pub fn count_payload(report: &CountReport, config: &Config, millis: u128) -> Rendered {
    let mut obj = serde_json::Map::new();
    obj.insert("count".into(), Value::String(report.count.clone()));
    obj.insert("scale".into(), Value::from(report.scale));
    obj.insert("strategy".into(), Value::String(report.strategy.clone()));
    let mut header = "count,scale,strategy".to_string();
    let mut row = format!("{},{},{}", report.count, report.scale, report.strategy);
    if config.timing {
        obj.insert("millis".into(), Value::from(millis as u64));
        header.push_str(",millis");
        row.push_str(&format!(",{millis}"));
    }
    Rendered { json: Value::Object(obj).to_string(), csv: format!("{header}\n{row}\n") }
}

pub fn estimate_payload(est: &CircleEstimate) -> Rendered {
    let label = match est.method {
        Method::ClosedForm => "closed-form",
        Method::Quadrature { .. } => "quadrature",
        Method::GridScan { .. } => "grid-scan",
    };
    Rendered {
        json: est.to_json(),
        csv: format!("value,err_est,method\n{},{},{label}\n", est.value, est.err_est),
    }
}

/// Matrix entries as a JSON array of rows. Entries outside i64 fall back to
/// decimal strings rather than losing precision through f64.
pub fn matrix_value(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<Value> = m
                .row(i)
                .iter()
                .map(|e| match i64::try_from(e) {
                    Ok(v) => Value::from(v),
                    Err(_) => Value::String(e.to_string()),
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

/// Matrix entries as bare CSV rows, one line per row.
pub fn matrix_csv(m: &IntMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|e| e.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Flat object payload: CSV becomes one header line and one value row, in
/// the same (sorted) key order the JSON serializer uses.
pub fn object_payload(obj: serde_json::Map<String, Value>) -> Rendered {
    let header: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    let row: Vec<String> = obj
        .values()
        .map(|v| match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        })
        .collect();
    let csv = format!("{}\n{}\n", header.join(","), row.join(","));
    Rendered { json: Value::Object(obj).to_string(), csv }
}
