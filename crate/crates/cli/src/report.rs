//! Report envelope shared by every command. The layout is documented in
//! `docs/report.schema.json`.

use rhardy_core::{ExtendedReal, HardyError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    PropertyFailed,
    NumericalFailure,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PropertyFailed => 1,
            Status::NumericalFailure => 3,
        }
    }
}

/// A named property asserted by a command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self { name: name.into(), passed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsParams {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemParams {
    pub space: String,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub q: f64,
    pub p_conj: f64,
    pub form: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchParams {
    pub t_lo: f64,
    pub t_hi: f64,
    pub grid_points: usize,
    pub refine_iters: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionParams {
    pub family: String,
    pub gamma: Option<f64>,
    pub support: Option<(f64, ExtendedReal<f64>)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteParams {
    pub cases: usize,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepParams {
    pub verb: String,
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
    pub workers: usize,
    pub values: Vec<f64>,
}

/// Fully resolved inputs of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    pub seed: u64,
    pub numerics: NumericsParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_function: Option<FunctionParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepParams>,
}

impl Parameters {
    pub fn new(seed: u64, numerics: NumericsParams) -> Self {
        Self {
            seed,
            numerics,
            pair: None,
            problem: None,
            search: None,
            test_function: None,
            t: None,
            suite: None,
            sweep: None,
        }
    }
}

/// The document written to standard output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub status: Status,
    pub exit_code: i32,
    pub parameters: Parameters,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    /// A completed run; the status follows from the checks.
    pub fn finished(command: &str, parameters: Parameters, checks: Vec<Check>, result: serde_json::Value) -> Self {
        let status = if checks.iter().all(|c| c.passed) { Status::Ok } else { Status::PropertyFailed };
        Self::build(command, parameters, status, checks, Some(result), None)
    }

    /// A run stopped by a numerical failure.
    pub fn failed(command: &str, parameters: Parameters, error: &HardyError) -> Self {
        Self::build(command, parameters, Status::NumericalFailure, Vec::new(), None, Some(error.to_string()))
    }

    /// A run that finished with some parts lost to numerical failures.
    pub fn partial(
        command: &str,
        parameters: Parameters,
        checks: Vec<Check>,
        result: serde_json::Value,
        error: String,
    ) -> Self {
        Self::build(command, parameters, Status::NumericalFailure, checks, Some(result), Some(error))
    }

    fn build(
        command: &str,
        parameters: Parameters,
        status: Status,
        checks: Vec<Check>,
        result: Option<serde_json::Value>,
        error: Option<String>,
    ) -> Self {
        Self {
            tool: "rhardy".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            status,
            exit_code: status.exit_code(),
            parameters,
            checks,
            result,
            error,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_from_checks() {
        let params = Parameters::new(1, NumericsParams { rel_tol: 1e-10, abs_tol: 1e-14, max_panels: 10 });
        let ok = Report::finished("x", params.clone(), vec![Check::new("a", true)], serde_json::json!({}));
        assert_eq!((ok.status, ok.exit_code), (Status::Ok, 0));
        let bad = Report::finished("x", params.clone(), vec![Check::new("a", false)], serde_json::json!({}));
        assert_eq!((bad.status, bad.exit_code), (Status::PropertyFailed, 1));
        let err = Report::failed("x", params, &HardyError::NumericalFailure("boom".into()));
        assert_eq!(err.exit_code, 3);
        let back: Report = serde_json::from_str(&err.to_json()).unwrap();
        assert_eq!(back, err);
    }
}
