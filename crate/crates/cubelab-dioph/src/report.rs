use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Result of an exact enumeration. The count is carried as a decimal string
/// so reports round-trip through JSON without precision loss; `scale` is the
/// instance size (P or N, whichever drives the run). Wall time is optional
/// because reports are compared byte-for-byte in tests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub count: String,
    pub scale: u64,
    pub strategy: String,
    pub partitions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl CountReport {
    pub fn new(count: BigUint, scale: u64, strategy: String, partitions: usize) -> Self {
        CountReport { count: count.to_string(), scale, strategy, partitions, millis: None }
    }

    pub fn with_millis(mut self, millis: u128) -> Self {
        self.millis = Some(millis);
        self
    }

    pub fn value(&self) -> BigUint {
        self.count.parse().expect("count field is a decimal string")
    }

    /// Lossy view for slope fitting and tolerance checks.
    pub fn value_f64(&self) -> f64 {
        self.count.parse::<f64>().unwrap_or(f64::INFINITY)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_preserves_big_counts() {
        let big = BigUint::parse_bytes(b"340282366920938463463374607431768211457", 10).unwrap();
        let r = CountReport::new(big.clone(), 100, "direct".into(), 4);
        let back: CountReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back.value(), big);
        assert!(!r.to_json().contains("millis"));
        assert!(r.with_millis(7).to_json().contains("\"millis\":7"));
    }
}
