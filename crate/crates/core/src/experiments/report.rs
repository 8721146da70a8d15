use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::spectral::NormSeries;

/// Comparison applied to an observed quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    Within { target: f64, tolerance: f64 },
    Below { limit: f64 },
    Holds,
}

/// One expected quantity with its observed value and verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub quantity: String,
    pub observed: f64,
    pub check: Check,
    pub anchor: String,
    pub passed: bool,
}

impl Expectation {
    pub fn within(quantity: impl Into<String>, observed: f64, target: f64, tolerance: f64, anchor: &str) -> Self {
        Self {
            quantity: quantity.into(),
            observed,
            check: Check::Within { target, tolerance },
            anchor: anchor.into(),
            passed: (observed - target).abs() <= tolerance,
        }
    }

    pub fn below(quantity: impl Into<String>, observed: f64, limit: f64, anchor: &str) -> Self {
        Self {
            quantity: quantity.into(),
            observed,
            check: Check::Below { limit },
            anchor: anchor.into(),
            passed: observed < limit,
        }
    }

    pub fn holds(quantity: impl Into<String>, ok: bool, anchor: &str) -> Self {
        Self {
            quantity: quantity.into(),
            observed: if ok { 1.0 } else { 0.0 },
            check: Check::Holds,
            anchor: anchor.into(),
            passed: ok,
        }
    }

    /// Human-readable target, e.g. `-0.125 +- 0.02` or `< 1e-9`.
    pub fn target_text(&self) -> String {
        match self.check {
            Check::Within { target, tolerance } => format!("{target:.6} +- {tolerance}"),
            Check::Below { limit } => format!("< {limit:e}"),
            Check::Holds => "holds".into(),
        }
    }
}

/// Outcome of one scenario.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub anchor: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub expectations: Vec<Expectation>,
    pub notes: Vec<String>,
    pub elapsed_seconds: f64,
    #[serde(skip)]
    pub series: Vec<NormSeries>,
}

impl Report {
    pub(crate) fn new(scenario: &str, anchor: &str) -> Self {
        Self {
            scenario: scenario.into(),
            anchor: anchor.into(),
            parameters: BTreeMap::new(),
            expectations: Vec::new(),
            notes: Vec::new(),
            elapsed_seconds: 0.0,
            series: Vec::new(),
        }
    }

    pub(crate) fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.into(), serde_json::to_value(value).unwrap_or(serde_json::Value::Null));
    }

    pub(crate) fn expect(&mut self, e: Expectation) {
        self.expectations.push(e);
    }

    pub(crate) fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.expectations.iter().all(|e| e.passed)
    }

    pub fn expectation(&self, quantity: &str) -> Option<&Expectation> {
        self.expectations.iter().find(|e| e.quantity == quantity)
    }
}
