//! Run configuration and the JSON report envelope shared by every command.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::DEFAULT_TOL;
use crate::group::DEFAULT_CAP;

pub const DEFAULT_SEED: u64 = 20160;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub tol: f64,
    /// Word-length bound; each command has its own default when unset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_word_len: Option<usize>,
    pub cap: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Exact,
            tol: DEFAULT_TOL,
            max_word_len: None,
            cap: DEFAULT_CAP,
            seed: DEFAULT_SEED,
            inputs: Vec::new(),
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Parse(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.max_word_len == Some(0) {
            return Err(Error::Parse("max word length must be at least 1".into()));
        }
        Ok(())
    }

    pub fn word_len_or(&self, default: usize) -> usize {
        self.max_word_len.unwrap_or(default)
    }

    /// Tolerance handed to the numeric routines: zero in exact mode.
    pub fn effective_tol(&self) -> f64 {
        match self.mode {
            Mode::Exact => 0.0,
            Mode::Float => self.tol,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NoFamily,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::NoFamily => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub status: Status,
    pub witnesses: Vec<Value>,
    pub result: Value,
    /// Wall-clock milliseconds; the only nondeterministic field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    /// A report whose status follows `pass`; failures without an explicit
    /// witness get the result itself as witness.
    pub fn from_outcome(command: &str, config: &RunConfig, pass: bool, witnesses: Vec<Value>, result: Value) -> Self {
        let status = if pass { Status::Pass } else { Status::Fail };
        Self::with_status(command, config, status, witnesses, result)
    }

    pub fn with_status(
        command: &str,
        config: &RunConfig,
        status: Status,
        mut witnesses: Vec<Value>,
        result: Value,
    ) -> Self {
        if status == Status::Fail && witnesses.is_empty() {
            witnesses.push(result.clone());
        }
        Report { command: command.into(), config: config.clone(), status, witnesses, result, timing_ms: None }
    }

    pub fn error(command: &str, config: &RunConfig, err: &Error) -> Self {
        Report {
            command: command.into(),
            config: config.clone(),
            status: Status::Error,
            witnesses: vec![Value::String(err.to_string())],
            result: Value::Null,
            timing_ms: None,
        }
    }

    pub fn timed(mut self, ms: f64) -> Self {
        self.timing_ms = Some(ms);
        self
    }

    /// The report with all timing information removed, for comparisons.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        r.timing_ms = None;
        strip_timing(&mut r.result);
        r
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

pub(crate) fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn fail_always_has_a_witness() {
        let r = Report::from_outcome("x", &RunConfig::default(), false, vec![], json!({"a": 1}));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(Status::NoFamily.exit_code(), 1);
    }

    #[test]
    fn timing_is_stripped() {
        let r = Report::from_outcome("x", &RunConfig::default(), true, vec![], json!([{"elapsed_ms": 3.0, "k": 1}]))
            .timed(4.0);
        let s = r.without_timing();
        assert_eq!(s.timing_ms, None);
        assert_eq!(s.result, json!([{"k": 1}]));
    }

    #[test]
    fn config_validation() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_ok());
        c.tol = 0.0;
        assert!(c.validate().is_err());
        let round: RunConfig = serde_json::from_str(&serde_json::to_string(&RunConfig::default()).unwrap()).unwrap();
        assert_eq!(round, RunConfig::default());
    }
}
