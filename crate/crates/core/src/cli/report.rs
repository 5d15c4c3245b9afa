use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::exactalg::{serial, Rational};

/// One verified identity: an exact expected value and what was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub expected: [String; 2],
    pub computed: Option<[String; 2]>,
    pub pass: bool,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

impl Check {
    pub fn expected_value(&self) -> Result<Rational, String> {
        serial::decode(&self.expected)
    }

    pub fn computed_value(&self) -> Option<Result<Rational, String>> {
        self.computed.as_ref().map(serial::decode)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub(crate) type Compute = Box<dyn Fn(u64) -> Result<Rational, String>>;

pub(crate) struct CheckSpec {
    pub id: &'static str,
    pub anchor: &'static str,
    pub expected: Rational,
    pub compute: Compute,
}

pub(crate) fn run_checks(suite: &str, seed: u64, mut specs: Vec<CheckSpec>) -> VerificationReport {
    specs.sort_by_key(|s| s.id);
    let checks: Vec<Check> = specs
        .into_iter()
        .map(|s| {
            let start = Instant::now();
            let result = (s.compute)(seed);
            let millis = start.elapsed().as_millis() as u64;
            let (computed, pass, error) = match result {
                Ok(v) => (Some(serial::encode(&v)), v == s.expected, None),
                Err(e) => (None, false, Some(e)),
            };
            Check {
                id: s.id.to_string(),
                anchor: s.anchor.to_string(),
                expected: serial::encode(&s.expected),
                computed,
                pass,
                millis,
                error,
            }
        })
        .collect();
    VerificationReport {
        suite: suite.to_string(),
        seed,
        passed: checks.iter().all(|c| c.pass),
        checks,
    }
}
