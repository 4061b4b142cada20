//! Verification certificates: a versioned JSON document with one entry per
//! check, written to `--out`, plus a human summary on standard output.

use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "qchar-cert/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Accumulates checks and payload for one command invocation.
#[derive(Debug)]
pub struct Certificate {
    command: String,
    params: Map<String, Value>,
    truncation: Value,
    checks: Vec<Check>,
    payload: Map<String, Value>,
    start: Instant,
}

impl Certificate {
    pub fn new(command: &str) -> Self {
        Certificate {
            command: command.to_string(),
            params: Map::new(),
            truncation: Value::Null,
            checks: Vec::new(),
            payload: Map::new(),
            start: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn truncation(&mut self, value: impl Into<Value>) -> &mut Self {
        self.truncation = value.into();
        self
    }

    /// Adds a top-level payload entry; reserved keys are rejected by debug assertion.
    pub fn payload(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        debug_assert!(!matches!(
            key,
            "schema" | "tool_version" | "command" | "params" | "truncation" | "checks" | "wall_time_ms"
        ));
        self.payload.insert(key.to_string(), value.into());
        self
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> &mut Self {
        let status = if pass { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: name.into(), status, detail: detail.into() });
        self
    }

    pub fn skip(&mut self, name: impl Into<String>, detail: impl Into<String>) -> &mut Self {
        self.checks.push(Check { name: name.into(), status: Status::Skipped, detail: detail.into() });
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "status": c.status.as_str(), "detail": c.detail}))
            .collect();
        let mut doc = self.payload.clone();
        doc.insert("schema".into(), SCHEMA.into());
        doc.insert("tool_version".into(), env!("CARGO_PKG_VERSION").into());
        doc.insert("command".into(), self.command.clone().into());
        doc.insert("params".into(), Value::Object(self.params.clone()));
        doc.insert("truncation".into(), self.truncation.clone());
        doc.insert("checks".into(), Value::Array(checks));
        doc.insert("wall_time_ms".into(), (self.start.elapsed().as_millis() as u64).into());
        Value::Object(doc)
    }

    /// Prints one line per check, writes the JSON if requested, and returns
    /// the process exit code (0 when no check failed, 1 otherwise).
    pub fn finish(self, out: Option<&Path>) -> anyhow::Result<i32> {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            if c.detail.is_empty() {
                println!("{tag} {}", c.name);
            } else {
                println!("{tag} {}: {}", c.name, c.detail);
            }
        }
        if let Some(path) = out {
            let mut text = serde_json::to_string_pretty(&self.to_json())?;
            text.push('\n');
            std::fs::write(path, text).with_context(|| format!("writing certificate to {}", path.display()))?;
        }
        Ok(if self.passed() { 0 } else { 1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_reserved_fields_present() {
        let mut c = Certificate::new("identity binomial");
        c.param("max_n", 3).check("sweep", true, "").payload("zeta", 1).payload("alpha", 2);
        let text = serde_json::to_string(&c.to_json()).unwrap();
        let keys =
            ["alpha", "checks", "command", "params", "schema", "tool_version", "truncation", "wall_time_ms", "zeta"];
        let positions: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(c.passed());
    }

    #[test]
    fn failure_sets_exit_code() {
        let mut c = Certificate::new("x");
        c.check("a", true, "").skip("b", "not implemented").check("c", false, "residual 1");
        assert!(!c.passed());
        assert_eq!(c.finish(None).unwrap(), 1);
    }
}
