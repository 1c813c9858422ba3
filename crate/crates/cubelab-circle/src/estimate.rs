use std::collections::BTreeMap;

use serde::Serialize;

/// How a numeric value was obtained.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Exact in exact arithmetic; only float roundoff remains.
    ClosedForm,
    Quadrature { nodes: u64, est_error: f64 },
    GridScan { resolution: u64 },
}

/// A real value with provenance. `err_est` is a heuristic error scale, not
/// a rigorous bound; `params` echoes the inputs that produced the value.
#[derive(Clone, Debug, Serialize)]
pub struct CircleEstimate {
    pub value: f64,
    pub err_est: f64,
    pub method: Method,
    pub params: BTreeMap<String, String>,
}

impl CircleEstimate {
    pub fn closed_form(value: f64) -> Self {
        CircleEstimate {
            value,
            err_est: value.abs() * f64::EPSILON,
            method: Method::ClosedForm,
            params: BTreeMap::new(),
        }
    }

    pub fn quadrature(value: f64, nodes: u64, est_error: f64) -> Self {
        CircleEstimate { value, err_est: est_error, method: Method::Quadrature { nodes, est_error }, params: BTreeMap::new() }
    }

    pub fn grid_scan(value: f64, resolution: u64) -> Self {
        CircleEstimate {
            value,
            err_est: 0.0,
            method: Method::GridScan { resolution },
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_err(mut self, err: f64) -> Self {
        self.err_est = err;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("estimate serializes")
    }
}

/// Plot-ready CSV for a scaling sweep: one row per point, the fitted slope
/// repeated in the last column.
pub fn slope_csv(points: &[(u64, f64)], fitted_slope: f64) -> String {
    let mut out = String::from("P,value,fitted_slope\n");
    for &(p, v) in points {
        out.push_str(&format!("{p},{v},{fitted_slope}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let est = CircleEstimate::quadrature(2.5, 128, 1e-9).with_param("P", 10u64);
        let json = est.to_json();
        assert!(json.contains("\"value\":2.5"));
        assert!(json.contains("\"quadrature\""));
        assert!(json.contains("\"nodes\":128"));
        assert!(json.contains("\"P\":\"10\"") || json.contains("\"P\":\"10\""));
    }

    #[test]
    fn csv_layout() {
        let csv = slope_csv(&[(8, 1.0), (16, 8.0)], 3.0);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("P,value,fitted_slope"));
        assert_eq!(lines.next(), Some("8,1,3"));
        assert_eq!(lines.next(), Some("16,8,3"));
    }
}
