//! Structured check reports with deterministic JSON rendering.
//!
//! Object keys are emitted in sorted order and no timing data is recorded,
//! so two runs on the same input produce identical bytes.

use std::fmt;

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    /// A check that passes when the two renderings agree.
    pub fn equal(
        name: impl Into<String>,
        expected: impl fmt::Display,
        computed: impl fmt::Display,
    ) -> Self {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let pass = expected == computed;
        Check {
            name: name.into(),
            expected,
            computed,
            pass,
        }
    }

    pub fn new(
        name: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        pass: bool,
    ) -> Self {
        Check {
            name: name.into(),
            expected: expected.into(),
            computed: computed.into(),
            pass,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.pass,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: Map::new(),
            outputs: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) {
        self.outputs.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    /// True when every check passed. An empty report passes.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "outputs": Value::Object(self.outputs.clone()),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "pass": self.pass(),
        })
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let v = self.to_value();
        if pretty {
            serde_json::to_string_pretty(&v).expect("json values serialize")
        } else {
            serde_json::to_string(&v).expect("json values serialize")
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.command,
            if self.pass() { "PASS" } else { "FAIL" }
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: expected {}, computed {}",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.expected,
                c.computed
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted_and_stable() {
        let mut r = Report::new("demo").input("zeta", 1).input("alpha", "x");
        r.push(Check::equal("same", 3, 3));
        let s = r.to_json(false);
        assert_eq!(s, r.clone().to_json(false));
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.find("\"checks\"").unwrap() < s.find("\"command\"").unwrap());
        assert!(r.pass());
    }

    #[test]
    fn failing_check_fails_report() {
        let mut r = Report::new("demo");
        r.push(Check::equal("differs", "a", "b"));
        assert!(!r.pass());
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_json(true).contains("\"pass\": false"));
    }
}
