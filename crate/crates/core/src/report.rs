//! Machine-readable run reports shared by the command-line front end.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    /// Wall time per phase, milliseconds.
    pub timings: BTreeMap<String, f64>,
    pub version: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            results: Value::Null,
            timings: BTreeMap::new(),
            version: VERSION.to_string(),
            warnings: Vec::new(),
        }
    }

    /// Run `f`, recording its wall time under `phase`.
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.record(phase, start.elapsed());
        out
    }

    pub fn record(&mut self, phase: &str, d: Duration) {
        *self.timings.entry(phase.to_string()).or_default() += d.as_secs_f64() * 1e3;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trip() {
        let mut r = RunReport::new("arrows", serde_json::json!({"t": 3}));
        let x = r.time("search", || 7);
        assert_eq!(x, 7);
        r.results = serde_json::json!({"arrows": true});
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["command"], "arrows");
        assert_eq!(v["results"]["arrows"], true);
        assert!(v["timings"]["search"].is_number());
        assert!(v.get("warnings").is_none());
    }
}
