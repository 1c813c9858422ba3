use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub x: u64,
    pub value: f64,
}

/// Full record of one experiment run. `partial` marks sweeps cut short by a
/// budget guard; whatever completed is still reported.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub target: String,
    pub instance: String,
    pub sweep: Vec<SweepPoint>,
    pub exponent: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    pub verdict: String,
    pub partial: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value\n");
        for p in &self.sweep {
            out.push_str(&format!("{},{}\n", p.x, p.value));
        }
        out
    }
}
