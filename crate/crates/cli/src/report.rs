use serde::Serialize;
use serde_json::{json, Value};

/// One named verification with its outcome. Failed checks carry the offending values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

/// Everything a command did, in a deterministic order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Vec<String>,
    pub checks: Vec<Check>,
    pub complete: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub summary: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    pub engine_version: String,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            outputs: Vec::new(),
            checks: Vec::new(),
            complete: true,
            summary: Value::Null,
            notes: Vec::new(),
            result: Value::Null,
            elapsed_ms: None,
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, witness: Value) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            witness,
        });
    }

    /// A check whose witness is only reported on failure.
    pub fn expect_eq<T: Serialize + PartialEq>(&mut self, name: impl Into<String>, found: T, expected: T) {
        let pass = found == expected;
        let witness = if pass {
            Value::Null
        } else {
            json!({ "found": found, "expected": expected })
        };
        self.check(name, pass, witness);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Records a budget stop: the report is marked incomplete and a failing check names
    /// the stage that was interrupted.
    pub fn mark_incomplete(&mut self, stage: &str, done: usize, total: usize) {
        self.complete = false;
        self.check(
            "budget",
            false,
            json!({ "stage": stage, "done": done, "total": total }),
        );
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        out.push_str(&format!("inputs: {}\n", self.inputs));
        for path in &self.outputs {
            out.push_str(&format!("wrote: {path}\n"));
        }
        if let Value::Object(map) = &self.summary {
            for (k, v) in map {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            if c.witness.is_null() {
                out.push_str(&format!("[{status}] {}\n", c.name));
            } else {
                out.push_str(&format!("[{status}] {}  {}\n", c.name, c.witness));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        if !self.complete {
            out.push_str("status: INCOMPLETE\n");
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        let failed = self.failed().count();
        out.push_str(&format!(
            "{} of {} checks passed\n",
            self.checks.len() - failed,
            self.checks.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_only_on_failure() {
        let mut r = RunReport::new("verify", json!({ "n": 4 }));
        r.expect_eq("count", 20, 20);
        r.expect_eq("other", 21, 20);
        assert!(r.checks[0].witness.is_null());
        assert_eq!(r.checks[1].witness, json!({ "found": 21, "expected": 20 }));
        assert!(!r.all_passed());
        assert!(r.to_text().contains("[FAIL] other"));
        assert!(!r.to_json().contains("elapsed_ms"));
    }

    #[test]
    fn incomplete_report() {
        let mut r = RunReport::new("nbar", Value::Null);
        r.mark_incomplete("chamber splitting", 3, 10);
        assert!(!r.complete);
        assert!(r.to_text().contains("INCOMPLETE"));
    }
}
