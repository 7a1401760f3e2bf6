//! Parameter sweeps: one condition or verify row per grid value.
//!
//! Rows are independent and run on a pool of `--workers` threads; the table
//! keeps grid order. The CSV columns are the field names of [`ConditionRow`]
//! and [`VerifyRow`], in declaration order.

use rayon::prelude::*;
use rhardy_core::conditions::condition_constant;
use rhardy_core::{ExtendedReal, HardyError, HardyProblem};
use serde::{Serialize, Serializer};

use crate::args::{GlobalArgs, SweepArgs, SweepParam, SweepVerb};
use crate::commands::{
    self, grid, numerics, numerics_params, parse_range, recipe, search_params, verify_row, verify_tol, Recipe,
};
use crate::report::{Check, Parameters, Report, SweepParams};
use crate::{CliError, Rendered};

fn param_name(p: SweepParam) -> &'static str {
    match p {
        SweepParam::Alpha => "alpha",
        SweepParam::Beta => "beta",
        SweepParam::P => "p",
        SweepParam::Q => "q",
        SweepParam::T => "t",
        SweepParam::B => "b",
    }
}

fn verb_name(v: SweepVerb) -> &'static str {
    match v {
        SweepVerb::Condition => "condition",
        SweepVerb::Verify => "verify",
    }
}

fn opt_float<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => rhardy_core::scalar::serde_float::serialize(x, s),
        None => s.serialize_none(),
    }
}

/// Row of a condition sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionRow {
    pub index: usize,
    pub value: f64,
    pub space: String,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub q: f64,
    pub form: String,
    /// `ok` or `numerical_failure`.
    pub status: String,
    #[serde(rename = "D")]
    pub d: Option<ExtendedReal<f64>>,
    #[serde(rename = "ln_D", serialize_with = "opt_float")]
    pub ln_d: Option<f64>,
    pub t_star: Option<f64>,
    pub at_boundary: Option<bool>,
    pub infimum_positive: Option<bool>,
    pub closed_form: Option<f64>,
    pub balance_exponent: Option<f64>,
    pub sandwich_low: Option<f64>,
    pub sandwich_high: Option<f64>,
    pub warning: Option<String>,
    pub error: Option<String>,
}

/// Row of a verify sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub index: usize,
    pub value: f64,
    pub space: String,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub q: f64,
    pub form: String,
    /// `ok` or `numerical_failure`.
    pub status: String,
    pub t: f64,
    pub lhs_full: Option<ExtendedReal<f64>>,
    pub lhs_restricted: Option<ExtendedReal<f64>>,
    pub rhs_norm: Option<ExtendedReal<f64>>,
    pub ratio_restricted: Option<ExtendedReal<f64>>,
    pub d_function: Option<ExtendedReal<f64>>,
    pub bound_applies: Option<bool>,
    pub bound_holds: Option<bool>,
    pub extremal_deviation: Option<f64>,
    pub divergence_note: Option<String>,
    pub error: Option<String>,
}

pub const CONDITION_COLUMNS: [&str; 20] = [
    "index",
    "value",
    "space",
    "alpha",
    "beta",
    "p",
    "q",
    "form",
    "status",
    "D",
    "ln_D",
    "t_star",
    "at_boundary",
    "infimum_positive",
    "closed_form",
    "balance_exponent",
    "sandwich_low",
    "sandwich_high",
    "warning",
    "error",
];

pub const VERIFY_COLUMNS: [&str; 20] = [
    "index",
    "value",
    "space",
    "alpha",
    "beta",
    "p",
    "q",
    "form",
    "status",
    "t",
    "lhs_full",
    "lhs_restricted",
    "rhs_norm",
    "ratio_restricted",
    "d_function",
    "bound_applies",
    "bound_holds",
    "extremal_deviation",
    "divergence_note",
    "error",
];

/// A validated row ready to compute.
struct Job {
    index: usize,
    value: f64,
    problem: HardyProblem<f64>,
    t: Option<f64>,
}

/// Replaces or adds `b=<value>` on a `cartan:` space string.
fn with_curvature(space: &str, b: f64) -> Result<String, CliError> {
    let (kind, rest) = space.split_once(':').unwrap_or((space, ""));
    if kind.trim() != "cartan" {
        return Err(CliError::Usage(format!("sweeping b needs a cartan base space, got '{space}'")));
    }
    let mut items: Vec<String> =
        rest.split(',').map(str::trim).filter(|x| !x.is_empty() && !x.starts_with("b=")).map(String::from).collect();
    items.push(format!("b={b}"));
    Ok(format!("cartan:{}", items.join(",")))
}

fn failure(e: HardyError) -> Result<String, CliError> {
    match e {
        HardyError::NumericalFailure(_) => Ok(e.to_string()),
        other => Err(other.into()),
    }
}

pub fn run(g: &GlobalArgs, a: &SweepArgs) -> Result<Rendered, CliError> {
    let mut params = Parameters::new(g.seed, numerics_params(g)?);
    let (start, stop, count) = parse_range(&a.range)?;
    let values = grid(start, stop, count, a.log)?;
    if a.workers == 0 {
        return Err(CliError::Usage("workers must be at least 1".into()));
    }
    match (a.verb, a.param, a.t) {
        (SweepVerb::Condition, SweepParam::T, _) => {
            return Err(CliError::Usage("t can only be swept with --verb verify".into()))
        }
        (SweepVerb::Condition, _, Some(_)) => return Err(CliError::Usage("--t applies to verify sweeps only".into())),
        (SweepVerb::Verify, SweepParam::T, Some(_)) => {
            return Err(CliError::Usage("--t conflicts with sweeping t".into()))
        }
        (SweepVerb::Verify, p, None) if p != SweepParam::T => {
            return Err(CliError::Usage("verify sweeps need --t unless t is swept".into()))
        }
        _ => {}
    }
    let search = (a.verb == SweepVerb::Condition).then(|| search_params(&a.search));
    let num = numerics(&params.numerics, search.as_ref());
    let mut base_args = a.problem.clone();
    if a.param == SweepParam::B {
        base_args.space = with_curvature(&base_args.space, start)?;
    }
    let (_, base) = commands::problem(&base_args, num)?;
    let (recipe, fp) = match a.verb {
        SweepVerb::Verify => {
            let (r, fp) = recipe(&a.function)?;
            (Some(r), Some(fp))
        }
        SweepVerb::Condition => (None, None),
    };

    let mut jobs = Vec::with_capacity(values.len());
    for (index, &value) in values.iter().enumerate() {
        let mut pa = a.problem.clone();
        let mut t = a.t;
        match a.param {
            SweepParam::Alpha => pa.alpha = value,
            SweepParam::Beta => pa.beta = value,
            SweepParam::P => pa.pair.p = value,
            SweepParam::Q => pa.pair.q = value,
            SweepParam::T => t = Some(value),
            SweepParam::B => pa.space = with_curvature(&pa.space, value)?,
        }
        if let Some(t) = t.filter(|t| !(*t > 0.0 && t.is_finite())) {
            return Err(CliError::Usage(format!("cut-offs must be finite and positive, got {t}")));
        }
        let (problem, _) = commands::problem(&pa, num)?;
        jobs.push(Job { index, value, problem, t });
    }

    params.problem = Some(base);
    params.search = search;
    params.test_function = fp;
    params.sweep = Some(SweepParams {
        verb: verb_name(a.verb).into(),
        param: param_name(a.param).into(),
        start,
        stop,
        count,
        log: a.log,
        workers: a.workers,
        values,
    });

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.workers)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", a.workers)))?;
    let tol = verify_tol(params.numerics.rel_tol);
    let (columns, result, checks, failed, csv) = match recipe {
        None => {
            let rows: Vec<Result<ConditionRow, CliError>> =
                pool.install(|| jobs.par_iter().map(condition_row).collect());
            let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
            let failed = rows.iter().filter(|r| r.error.is_some()).count();
            (&CONDITION_COLUMNS[..], serde_json::to_value(&rows), Vec::new(), failed, table(&rows)?)
        }
        Some(recipe) => {
            let rows: Vec<Result<VerifyRow, CliError>> =
                pool.install(|| jobs.par_iter().map(|j| sweep_verify_row(j, &recipe, tol)).collect());
            let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
            let failed = rows.iter().filter(|r| r.error.is_some()).count();
            let mut checks = Vec::new();
            for r in &rows {
                if let Some(holds) = r.bound_holds {
                    checks.push(Check::new(format!("row {}: ratio_restricted >= D(t)", r.index), holds));
                }
                if let Some(dev) = r.extremal_deviation {
                    checks.push(Check::new(format!("row {}: extremal ratio equals D(t)", r.index), dev < tol));
                }
            }
            (&VERIFY_COLUMNS[..], serde_json::to_value(&rows), checks, failed, table(&rows)?)
        }
    };
    let result = serde_json::json!({
        "columns": columns,
        "rows": result.expect("rows serialize"),
    });
    let report = if failed > 0 {
        Report::partial("sweep", params, checks, result, format!("{failed} of {count} rows failed numerically"))
    } else {
        Report::finished("sweep", params, checks, result)
    };
    let csv = (g.output == crate::args::Output::Csv).then_some(csv);
    Ok(Rendered { report, csv })
}

fn row_prefix(job: &Job) -> (String, f64, f64, f64, f64, String) {
    let p = &job.problem;
    (p.space.to_string(), p.alpha, p.beta, p.pair.p(), p.pair.q(), p.form.to_string())
}

fn condition_row(job: &Job) -> Result<ConditionRow, CliError> {
    let (space, alpha, beta, p, q, form) = row_prefix(job);
    let mut row = ConditionRow {
        index: job.index,
        value: job.value,
        space,
        alpha,
        beta,
        p,
        q,
        form,
        status: "ok".into(),
        d: None,
        ln_d: None,
        t_star: None,
        at_boundary: None,
        infimum_positive: None,
        closed_form: None,
        balance_exponent: None,
        sandwich_low: None,
        sandwich_high: None,
        warning: None,
        error: None,
    };
    match condition_constant(&job.problem) {
        Ok(rep) => {
            row.d = Some(rep.d);
            row.ln_d = Some(rep.ln_d);
            row.t_star = Some(rep.t_star);
            row.at_boundary = Some(rep.at_boundary);
            row.infimum_positive = Some(rep.infimum_positive);
            row.closed_form = rep.closed_form;
            row.balance_exponent = rep.balance_exponent;
            row.sandwich_low = rep.sandwich.map(|s| s.0);
            row.sandwich_high = rep.sandwich.map(|s| s.1);
            row.warning = rep.warning;
        }
        Err(e) => {
            row.status = "numerical_failure".into();
            row.error = Some(failure(e)?);
        }
    }
    Ok(row)
}

fn sweep_verify_row(job: &Job, recipe: &Recipe, tol: f64) -> Result<VerifyRow, CliError> {
    let (space, alpha, beta, p, q, form) = row_prefix(job);
    let t = job.t.expect("validated before the rows run");
    let mut row = VerifyRow {
        index: job.index,
        value: job.value,
        space,
        alpha,
        beta,
        p,
        q,
        form,
        status: "ok".into(),
        t,
        lhs_full: None,
        lhs_restricted: None,
        rhs_norm: None,
        ratio_restricted: None,
        d_function: None,
        bound_applies: None,
        bound_holds: None,
        extremal_deviation: None,
        divergence_note: None,
        error: None,
    };
    match verify_row(&job.problem, recipe, t, tol) {
        Ok(v) => {
            row.lhs_full = Some(v.lhs_full);
            row.lhs_restricted = Some(v.lhs_restricted);
            row.rhs_norm = Some(v.rhs_norm);
            row.ratio_restricted = v.ratio_restricted;
            row.d_function = Some(v.d_function);
            row.bound_applies = Some(v.bound_applies);
            row.bound_holds = v.bound_holds;
            row.extremal_deviation = v.extremal_deviation;
            row.divergence_note = v.divergence_note;
        }
        Err(e) => {
            row.status = "numerical_failure".into();
            row.error = Some(failure(e)?);
        }
    }
    Ok(row)
}

fn table<R: Serialize>(rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
