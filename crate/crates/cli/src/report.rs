use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        CheckOutcome { name: name.into(), passed, location: None, detail: None }
    }

    pub fn at(mut self, location: impl Into<String>) -> Self {
        self.location = Some(location.into());
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// What a subcommand produced, before timing and digesting.
pub struct Outcome {
    pub results: Value,
    pub checks: Vec<CheckOutcome>,
    /// Human-readable rendering of `results`.
    pub text: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub results: Value,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
    pub duration_ms: f64,
}

impl RunReport {
    pub fn new(command: &str, digest: String, outcome: Outcome, duration_ms: f64) -> Self {
        let passed = outcome.checks.iter().all(|c| c.passed);
        RunReport {
            command: command.to_string(),
            inputs_digest: digest,
            results: outcome.results,
            checks: outcome.checks,
            passed,
            duration_ms,
        }
    }
}

/// SHA-256 over the command line and the contents of every input file, each
/// part length-prefixed.
#[derive(Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn add(&mut self, part: &[u8]) {
        self.0.update((part.len() as u64).to_le_bytes());
        self.0.update(part);
    }

    pub fn finish(self) -> String {
        self.0.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}
