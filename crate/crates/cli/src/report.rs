use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, OnUnstable, RunConfig};

pub const SCHEMA: u32 = 1;

/// One checked number: what came out, what was wanted, and a label saying
/// which claim it belongs to.
#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub computed: Value,
    pub expected: Value,
    pub anchor: String,
    pub pass: bool,
}

impl Assertion {
    pub fn eq<T: Serialize + PartialEq>(name: &str, computed: T, expected: T, anchor: &str) -> Self {
        let pass = computed == expected;
        Assertion {
            name: name.into(),
            computed: json!(computed),
            expected: json!(expected),
            anchor: anchor.into(),
            pass,
        }
    }

    /// `computed` is shown next to a textual expectation.
    pub fn holds<T: Serialize>(name: &str, computed: T, expected: &str, pass: bool, anchor: &str) -> Self {
        Assertion {
            name: name.into(),
            computed: json!(computed),
            expected: json!(expected),
            anchor: anchor.into(),
            pass,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub result: Value,
    /// `None` when the command makes no claim.
    pub pass: Option<bool>,
    /// `None` when nothing was truncated.
    pub stable: Option<bool>,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn new(command: &str, result: Value) -> Self {
        Report { command: command.into(), result, ..Default::default() }
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = Some(pass);
        self
    }

    pub fn with_stable(mut self, stable: bool) -> Self {
        self.stable = Some(self.stable.unwrap_or(true) && stable);
        self
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false) || self.assertions.iter().any(|a| !a.pass)
    }

    pub fn unstable(&self) -> bool {
        self.stable == Some(false)
    }

    pub fn envelope(&self, cfg: &RunConfig) -> Value {
        let mut v = json!({
            "schema": SCHEMA,
            "command": self.command,
            "config": { "trunc": cfg.trunc, "delta": cfg.delta },
            "result": self.result,
        });
        if let Some(p) = self.pass {
            v["pass"] = json!(p);
        }
        if let Some(s) = self.stable {
            v["stable"] = json!(s);
        }
        if !self.assertions.is_empty() {
            v["assertions"] = json!(self.assertions);
            v["pass"] = json!(!self.failed());
        }
        v
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        match cfg.format {
            Format::Json => serde_json::to_string_pretty(&self.envelope(cfg)).expect("json values serialize"),
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        if self.assertions.is_empty() {
            if let Value::Object(map) = &self.result {
                for (k, v) in map {
                    out += &format!("  {k}: {}\n", compact(v));
                }
            } else {
                out += &format!("  {}\n", compact(&self.result));
            }
        }
        for a in &self.assertions {
            out += &format!(
                "  {} {}: computed {}, expected {} ({})\n",
                if a.pass { "PASS" } else { "FAIL" },
                a.name,
                compact(&a.computed),
                compact(&a.expected),
                a.anchor
            );
        }
        if let Some(s) = self.stable {
            out += &format!("  stable: {s}\n");
        }
        if self.pass.is_some() || !self.assertions.is_empty() {
            out += &format!("  result: {}\n", if self.failed() { "FAIL" } else { "PASS" });
        }
        out
    }

    /// 0 on success, 1 when a claim failed, 2 when the unstable policy is
    /// `fail` and some number did not stabilise.
    pub fn exit_code(&self, cfg: &RunConfig) -> i32 {
        if self.failed() {
            1
        } else if self.unstable() && cfg.on_unstable == OnUnstable::Fail {
            2
        } else {
            0
        }
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_and_exit() {
        let cfg = RunConfig::default();
        let r = Report::new("x", json!({"dim": 2})).with_pass(true).with_stable(false);
        let e = r.envelope(&cfg);
        assert_eq!(e["schema"], 1);
        assert_eq!(e["stable"], false);
        assert_eq!(r.exit_code(&cfg), 0);
        let strict = RunConfig { on_unstable: OnUnstable::Fail, ..cfg.clone() };
        assert_eq!(r.exit_code(&strict), 2);
        let mut f = Report::new("y", Value::Null);
        f.assertions.push(Assertion::eq("n", 1, 2, "label"));
        assert_eq!(f.exit_code(&cfg), 1);
        assert_eq!(f.envelope(&cfg)["pass"], false);
        assert!(f.render(&RunConfig { format: Format::Text, ..cfg }).contains("FAIL n: computed 1, expected 2"));
    }
}
