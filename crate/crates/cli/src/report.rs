//! Run reports: JSON with every float rounded to 12 significant digits.

use contextq_core::{ComplexMatrix, C64};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when `measured <= tolerance`.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: measured <= tolerance,
            measured,
            tolerance,
        }
    }

    /// Passes when `|measured − target| <= tolerance`; records the deviation.
    pub fn near(name: impl Into<String>, measured: f64, target: f64, tolerance: f64) -> Self {
        Self::at_most(name, (measured - target).abs(), tolerance)
    }

    /// Boolean condition; `measured` is 1 for true and 0 for false.
    pub fn holds(name: impl Into<String>, condition: bool) -> Self {
        Self {
            name: name.into(),
            pass: condition,
            measured: if condition { 1.0 } else { 0.0 },
            tolerance: 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub subcommand: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub seed: Option<u64>,
    pub duration_ms: Option<f64>,
}

impl Report {
    pub fn new(subcommand: &str) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            checks: Vec::new(),
            seed: None,
            duration_ms: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_value(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "measured": c.measured, "tolerance": c.tolerance}))
            .collect();
        let mut v = json!({
            "subcommand": self.subcommand,
            "inputs": self.inputs,
            "results": self.results,
            "checks": checks,
            "seed": self.seed,
            "duration_ms": self.duration_ms,
        });
        round_floats(&mut v);
        v
    }

    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&self.to_value()).expect("report values are serializable");
        s.push('\n');
        s
    }
}

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn matrix_value(m: &ComplexMatrix) -> Value {
    json!({
        "dim": m.dim(),
        "re": m.entries().iter().map(|z| z.re).collect::<Vec<_>>(),
        "im": m.entries().iter().map(|z| z.im).collect::<Vec<_>>(),
    })
}

pub fn vector_value(v: &[C64]) -> Value {
    json!({
        "dim": v.len(),
        "re": v.iter().map(|z| z.re).collect::<Vec<_>>(),
        "im": v.iter().map(|z| z.im).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round12(1.234_567_890_123_456), 1.234_567_890_12);
        assert_eq!(round12(-0.0), 0.0);
        assert_eq!(round12(1.0e-17), 1.0e-17);
        assert_eq!(round12(2.0), 2.0);
    }

    #[test]
    fn report_status_is_conjunction_of_checks() {
        let mut r = Report::new("x");
        assert!(r.passed());
        r.check(Check::at_most("a", 0.5, 1.0));
        assert!(r.passed());
        r.check(Check::near("b", 1.1, 1.0, 1e-3));
        assert!(!r.passed());
        let v = r.to_value();
        assert_eq!(v["checks"][1]["pass"], false);
        assert_eq!(v["seed"], Value::Null);
    }
}
