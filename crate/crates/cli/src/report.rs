use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Feasible,
    Infeasible,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Feasible => 0,
            Status::Infeasible => 1,
            Status::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
            Status::Error => "error",
        }
    }
}

/// Outcome of one command. Fields serialize in declaration order; absent
/// optional fields are omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimum: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    /// `check` arguments under which the witness re-validates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replay: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    /// SHA-256 of the instance file (or of the generated text).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance_sha256: Option<String>,
    /// Generated or reduced instance text.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Report {
    pub fn new(command: impl Into<String>, status: Status) -> Self {
        Report {
            command: command.into(),
            status,
            optimum: None,
            witness: None,
            replay: None,
            message: None,
            instance_sha256: None,
            output: None,
            elapsed_ms: None,
        }
    }

    pub fn error(command: impl Into<String>, msg: impl Into<String>) -> Self {
        Report { message: Some(msg.into()), ..Report::new(command, Status::Error) }
    }

    pub fn with_message(mut self, msg: impl Into<String>) -> Self {
        self.message = Some(msg.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary; the `output` text is not included.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "status: {}", self.status.as_str());
        if let Some(o) = &self.optimum {
            let _ = writeln!(s, "optimum: {o}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness: {}", w.join(" "));
        }
        if let Some(r) = &self.replay {
            let _ = writeln!(s, "replay: {}", r.join(" "));
        }
        if let Some(m) = &self.message {
            let _ = writeln!(s, "message: {m}");
        }
        if let Some(h) = &self.instance_sha256 {
            let _ = writeln!(s, "instance: {h}");
        }
        if let Some(t) = self.elapsed_ms {
            let _ = writeln!(s, "time: {t:.3} ms");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("solve", Status::Feasible);
        r.optimum = Some("3/2".into());
        r.witness = Some(vec!["a0".into(), "a4".into()]);
        r.elapsed_ms = Some(1.5);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn field_order_is_stable() {
        let mut r = Report::new("check", Status::Infeasible);
        r.message = Some("x".into());
        r.optimum = Some("1".into());
        let j = r.to_json();
        let pos = |k: &str| j.find(k).unwrap();
        assert!(pos("\"command\"") < pos("\"status\""));
        assert!(pos("\"optimum\"") < pos("\"message\""));
        assert!(!j.contains("witness"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Feasible.exit_code(), 0);
        assert_eq!(Status::Infeasible.exit_code(), 1);
        assert_eq!(Status::Error.exit_code(), 2);
    }
}
