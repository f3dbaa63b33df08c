use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::matkernel::{ComplexMatrix, ToleranceConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Structured outcome of one check. Inputs hold everything needed to replay
/// it; matrices are stored in matrix JSON form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub inputs: BTreeMap<String, Value>,
    pub quantities: BTreeMap<String, Value>,
    pub tolerances: BTreeMap<String, Value>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            inputs: BTreeMap::new(),
            quantities: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            verdict: Verdict::Pass,
        }
    }

    pub fn input(mut self, name: &str, value: impl Serialize) -> Self {
        self.inputs.insert(name.into(), to_value(value));
        self
    }

    pub fn matrix(self, name: &str, m: &ComplexMatrix) -> Self {
        self.input(name, m)
    }

    pub fn quantity(mut self, name: &str, value: impl Serialize) -> Self {
        self.quantities.insert(name.into(), to_value(value));
        self
    }

    pub fn tolerance(mut self, name: &str, value: f64) -> Self {
        self.tolerances.insert(name.into(), to_value(value));
        self
    }

    pub fn config(mut self, cfg: &ToleranceConfig) -> Self {
        if let Value::Object(map) = to_value(cfg) {
            self.tolerances.extend(map);
        }
        self
    }

    pub fn verdict(mut self, pass: bool) -> Self {
        self.verdict = if pass { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report fields serialize")
}
