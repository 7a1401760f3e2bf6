//! Single-shot commands.

use std::str::FromStr;

use rhardy_core::conditions::{condition_constant, d_function};
use rhardy_core::exponents::{k_sup_closed_form, optimal_alpha};
use rhardy_core::inequality::{extremal_function, hoelder_suite, minkowski_suite, ratio_report};
use rhardy_core::{
    ExponentPair, ExtendedReal, Form, HardyError, HardyProblem, InfimumSearch, Integrator, Numerics, RadialSpace, Real,
    SuiteReport, TestFunction, Tolerance,
};
use serde::Serialize;

use crate::args::{
    Cli, Command, ConditionArgs, FamilyArg, GlobalArgs, HoelderArgs, MinkowskiArgs, Output, PairArgs, ProblemArgs,
    SearchArgs, TestFunctionArgs, VerifyArgs,
};
use crate::report::{
    Check, FunctionParams, NumericsParams, Parameters, ProblemParams, Report, SearchParams, SuiteParams,
};
use crate::{sweep, CliError, Rendered, ABS_TOL_ENV, REL_TOL_ENV};

/// Largest allowed `|margin| / max(lhs, 1)` in the equality cases of the suites.
pub const EQUALITY_TOL: f64 = 1e-10;

/// Relative slack of the verify checks at default tolerances.
pub const VERIFY_TOL: f64 = 1e-6;

pub fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    if cli.global.output == Output::Csv && !matches!(cli.command, Command::Sweep(_)) {
        return Err(CliError::Usage("csv output is available for sweep tables only".into()));
    }
    let report = match &cli.command {
        Command::Constants(a) => constants(&cli.global, a)?,
        Command::Condition(a) => condition(&cli.global, a)?,
        Command::Verify(a) => verify(&cli.global, a)?,
        Command::Minkowski(a) => minkowski(&cli.global, a)?,
        Command::Hoelder(a) => hoelder(&cli.global, a)?,
        Command::Sweep(a) => return sweep::run(&cli.global, a),
    };
    Ok(Rendered { report, csv: None })
}

fn env_tol(name: &str) -> Result<Option<f64>, CliError> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{name} must be a number, got '{v}'"))),
        Err(_) => Ok(None),
    }
}

/// Tolerances from flags, then the environment, then the library defaults.
pub fn numerics_params(g: &GlobalArgs) -> Result<NumericsParams, CliError> {
    let rel_tol = match g.rel_tol {
        Some(v) => v,
        None => env_tol(REL_TOL_ENV)?.unwrap_or_else(f64::default_rel_tol),
    };
    let abs_tol = match g.abs_tol {
        Some(v) => v,
        None => env_tol(ABS_TOL_ENV)?.unwrap_or(0.0),
    };
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(CliError::Usage(format!("relative tolerance must lie in (0, 1), got {rel_tol}")));
    }
    if !(abs_tol >= 0.0 && abs_tol.is_finite()) {
        return Err(CliError::Usage(format!("absolute tolerance must be finite and nonnegative, got {abs_tol}")));
    }
    if g.max_panels == 0 {
        return Err(CliError::Usage("max-panels must be at least 1".into()));
    }
    Ok(NumericsParams { rel_tol, abs_tol, max_panels: g.max_panels })
}

/// Parameters with only the global settings filled in.
pub fn bare_parameters(g: &GlobalArgs) -> Parameters {
    let numerics = numerics_params(g).unwrap_or(NumericsParams {
        rel_tol: f64::default_rel_tol(),
        abs_tol: 0.0,
        max_panels: g.max_panels,
    });
    Parameters::new(g.seed, numerics)
}

pub fn search_params(s: &SearchArgs) -> SearchParams {
    SearchParams { t_lo: s.t_lo, t_hi: s.t_hi, grid_points: s.grid_points, refine_iters: s.refine_iters }
}

pub fn numerics(n: &NumericsParams, s: Option<&SearchParams>) -> Numerics<f64> {
    let mut search = InfimumSearch::default();
    if let Some(s) = s {
        search.t_lo = s.t_lo;
        search.t_hi = s.t_hi;
        search.grid_points = s.grid_points;
        search.refine_iters = s.refine_iters;
    }
    Numerics {
        integrator: Integrator { tol: Tolerance { rel: n.rel_tol, abs: n.abs_tol }, max_panels: n.max_panels },
        search,
    }
}

pub fn pair(a: &PairArgs) -> Result<ExponentPair<f64>, CliError> {
    Ok(ExponentPair::new(a.p, a.q)?)
}

/// Builds and validates a problem, returning it with its report record.
pub fn problem(a: &ProblemArgs, numerics: Numerics<f64>) -> Result<(HardyProblem<f64>, ProblemParams), CliError> {
    let space = RadialSpace::<f64>::from_str(&a.space)?;
    let form = Form::from_str(&a.form)?;
    let pair = pair(&a.pair)?;
    let problem = HardyProblem::new(space, a.alpha, a.beta, pair, form)?.with_numerics(numerics);
    let params = ProblemParams {
        space: space.to_string(),
        alpha: a.alpha,
        beta: a.beta,
        p: a.pair.p,
        q: a.pair.q,
        p_conj: pair.p_conj(),
        form: form.to_string(),
    };
    Ok((problem, params))
}

/// Parses `start:stop:count` with `count >= 2` and `start < stop`.
pub fn parse_range(s: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || CliError::Usage(format!("range '{s}' must look like start:stop:count"));
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else { return Err(bad()) };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if !(start.is_finite() && stop.is_finite() && start < stop) {
        return Err(CliError::Usage(format!("range '{s}' needs finite start < stop")));
    }
    if count < 2 {
        return Err(CliError::Usage(format!("range '{s}' needs count >= 2")));
    }
    Ok((start, stop, count))
}

/// `count` values from `start` to `stop`, equally spaced in value or in logarithm.
pub fn grid(start: f64, stop: f64, count: usize, log: bool) -> Result<Vec<f64>, CliError> {
    if log && start <= 0.0 {
        return Err(CliError::Usage(format!("log spacing needs a positive start, got {start}")));
    }
    let at = |i: usize| {
        if i == count - 1 {
            return stop;
        }
        let w = i as f64 / (count - 1) as f64;
        if log {
            start * (stop / start).powf(w)
        } else {
            start + (stop - start) * w
        }
    };
    Ok((0..count).map(at).collect())
}

/// Parses `r0:r1`, where `r1` may be `inf`.
pub fn parse_support(s: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("support '{s}' must look like r0:r1"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let r0: f64 = a.trim().parse().map_err(|_| bad())?;
    let r1: f64 = b.trim().parse().map_err(|_| bad())?;
    Ok((r0, r1))
}

/// A test-function recipe: extremal functions depend on the cut-off.
#[derive(Debug, Clone, Copy)]
pub enum Recipe {
    Extremal,
    Power(TestFunction<f64>),
}

impl Recipe {
    pub fn at(&self, problem: &HardyProblem<f64>, t: f64) -> Result<TestFunction<f64>, HardyError> {
        match self {
            Recipe::Extremal => extremal_function(problem, t),
            Recipe::Power(f) => Ok(*f),
        }
    }
}

pub fn recipe(a: &TestFunctionArgs) -> Result<(Recipe, FunctionParams), CliError> {
    match a.family {
        FamilyArg::Extremal => {
            if a.gamma.is_some() || a.support.is_some() {
                return Err(CliError::Usage("--gamma and --support apply to the power family only".into()));
            }
            Ok((Recipe::Extremal, FunctionParams { family: "extremal".into(), gamma: None, support: None }))
        }
        FamilyArg::Power => {
            let gamma = a.gamma.ok_or_else(|| CliError::Usage("the power family needs --gamma".into()))?;
            let support =
                a.support.as_deref().ok_or_else(|| CliError::Usage("the power family needs --support".into()))?;
            let (r0, r1) = parse_support(support)?;
            let f = TestFunction::power(gamma, r0, r1)?;
            let params = FunctionParams {
                family: "power".into(),
                gamma: Some(gamma),
                support: Some((r0, ExtendedReal::new(r1).map_err(CliError::from)?)),
            };
            Ok((Recipe::Power(f), params))
        }
    }
}

/// One verify row: both sides at cut-off `t` next to `D(t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub t: f64,
    pub lhs_full: ExtendedReal<f64>,
    pub lhs_restricted: ExtendedReal<f64>,
    pub rhs_norm: ExtendedReal<f64>,
    pub ratio_restricted: Option<ExtendedReal<f64>>,
    pub d_function: ExtendedReal<f64>,
    /// The support lies where the restricted left side integrates, so `ratio >= D(t)`.
    pub bound_applies: bool,
    pub bound_holds: Option<bool>,
    /// `|ratio / D(t) - 1|` for extremal functions.
    pub extremal_deviation: Option<f64>,
    pub divergence_note: Option<String>,
}

/// Slack of the verify checks for the given quadrature tolerance.
pub fn verify_tol(rel_tol: f64) -> f64 {
    VERIFY_TOL.max(100.0 * rel_tol)
}

pub fn verify_row(problem: &HardyProblem<f64>, recipe: &Recipe, t: f64, tol: f64) -> Result<VerifyRow, HardyError> {
    let f = recipe.at(problem, t)?;
    let rep = ratio_report(problem, &f, t)?;
    let d = d_function(problem, t)?;
    let inside = match problem.form {
        Form::Direct => f.support.1 <= t,
        Form::Conjugate => f.support.0 >= t,
    };
    let bound_applies = inside && rep.ratio_restricted.is_some();
    let bound_holds = rep.ratio_restricted.filter(|_| bound_applies).map(|r| r.ln() >= d.ln() + (-tol).ln_1p());
    let extremal_deviation = match (recipe, rep.ratio_restricted) {
        (Recipe::Extremal, Some(r)) if d.is_positive_finite() => Some((r.ln() - d.ln()).exp_m1().abs()),
        _ => None,
    };
    Ok(VerifyRow {
        t,
        lhs_full: rep.lhs_full,
        lhs_restricted: rep.lhs_restricted,
        rhs_norm: rep.rhs_norm,
        ratio_restricted: rep.ratio_restricted,
        d_function: d,
        bound_applies,
        bound_holds,
        extremal_deviation,
        divergence_note: rep.divergence_note,
    })
}

/// Checks asserted by a verify row, labelled by `label`.
pub fn verify_checks(row: &VerifyRow, label: &str, tol: f64) -> Vec<Check> {
    let mut checks = Vec::new();
    if let Some(holds) = row.bound_holds {
        checks.push(Check::new(format!("{label}: ratio_restricted >= D(t)"), holds));
    }
    if let Some(dev) = row.extremal_deviation {
        checks.push(Check::new(format!("{label}: extremal ratio equals D(t)"), dev < tol));
    }
    checks
}

fn to_value<S: Serialize>(v: &S) -> serde_json::Value {
    serde_json::to_value(v).expect("results serialize")
}

fn constants(g: &GlobalArgs, a: &PairArgs) -> Result<Report, CliError> {
    let mut params = Parameters::new(g.seed, numerics_params(g)?);
    params.pair = Some((a.p, a.q));
    let pair = pair(a)?;
    let c = optimal_alpha(&pair);
    let closed = k_sup_closed_form(&pair);
    let (lo, hi) = c.admissible_interval;
    let checks = vec![
        Check::new("alpha_star lies in the admissible interval", c.alpha_star > lo && c.alpha_star < hi),
        Check::new("k_sup matches its closed form", (c.k_sup / closed - 1.0).abs() < 1e-12),
        Check::new("k_sup lies in (0, 1)", c.k_sup > 0.0 && c.k_sup < 1.0),
    ];
    let result = serde_json::json!({
        "p": a.p,
        "q": a.q,
        "p_conj": pair.p_conj(),
        "alpha_star": c.alpha_star,
        "k_sup": c.k_sup,
        "k_sup_closed_form": closed,
        "admissible_interval": [lo, hi],
    });
    Ok(Report::finished("constants", params, checks, result))
}

fn condition(g: &GlobalArgs, a: &ConditionArgs) -> Result<Report, CliError> {
    let mut params = Parameters::new(g.seed, numerics_params(g)?);
    let search = search_params(&a.search);
    let (problem, pp) = problem(&a.problem, numerics(&params.numerics, Some(&search)))?;
    params.problem = Some(pp);
    params.search = Some(search);
    match condition_constant(&problem) {
        Ok(rep) => {
            let checks = vec![Check::new("D is positive and attained inside the search range", rep.infimum_positive)];
            Ok(Report::finished("condition", params, checks, to_value(&rep)))
        }
        Err(e @ HardyError::NumericalFailure(_)) => Ok(Report::failed("condition", params, &e)),
        Err(e) => Err(e.into()),
    }
}

fn verify(g: &GlobalArgs, a: &VerifyArgs) -> Result<Report, CliError> {
    let mut params = Parameters::new(g.seed, numerics_params(g)?);
    let (problem, pp) = problem(&a.problem, numerics(&params.numerics, None))?;
    let (recipe, fp) = recipe(&a.function)?;
    let ts = match (a.t, a.t_grid.as_deref()) {
        (Some(t), None) => vec![t],
        (None, Some(range)) => {
            let (start, stop, count) = parse_range(range)?;
            grid(start, stop, count, true)?
        }
        _ => return Err(CliError::Usage("verify needs --t or --t-grid".into())),
    };
    if let Some(t) = ts.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(CliError::Usage(format!("cut-offs must be finite and positive, got {t}")));
    }
    params.problem = Some(pp);
    params.test_function = Some(fp);
    params.t = Some(ts.clone());

    let tol = verify_tol(params.numerics.rel_tol);
    let mut rows = Vec::with_capacity(ts.len());
    let mut checks = Vec::new();
    for &t in &ts {
        match verify_row(&problem, &recipe, t, tol) {
            Ok(row) => {
                checks.extend(verify_checks(&row, &format!("t={t}"), tol));
                rows.push(row);
            }
            Err(e @ HardyError::NumericalFailure(_)) => return Ok(Report::failed("verify", params, &e)),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report::finished("verify", params, checks, serde_json::json!({ "rows": to_value(&rows) })))
}

fn suite_checks(s: &SuiteReport) -> Vec<Check> {
    vec![
        Check::new("no violations", s.violations.is_empty()),
        Check::new("equality cases hold", s.equality_max_deviation <= EQUALITY_TOL),
    ]
}

fn suite_report(command: &str, params: Parameters, run: rhardy_core::Result<SuiteReport>) -> Result<Report, CliError> {
    match run {
        Ok(s) => Ok(Report::finished(command, params, suite_checks(&s), to_value(&s))),
        Err(e @ HardyError::NumericalFailure(_)) => Ok(Report::failed(command, params, &e)),
        Err(e) => Err(e.into()),
    }
}

fn minkowski(g: &GlobalArgs, a: &MinkowskiArgs) -> Result<Report, CliError> {
    let mut params = Parameters::new(g.seed, numerics_params(g)?);
    if a.cases == 0 || a.grid == 0 {
        return Err(CliError::Usage("cases and grid must be at least 1".into()));
    }
    params.suite = Some(SuiteParams { cases: a.cases, rows: Some(a.grid), cols: Some(a.grid) });
    suite_report("minkowski", params, minkowski_suite(g.seed, a.cases, a.grid, a.grid))
}

fn hoelder(g: &GlobalArgs, a: &HoelderArgs) -> Result<Report, CliError> {
    let mut params = Parameters::new(g.seed, numerics_params(g)?);
    if a.cases == 0 {
        return Err(CliError::Usage("cases must be at least 1".into()));
    }
    params.suite = Some(SuiteParams { cases: a.cases, rows: None, cols: None });
    suite_report("hoelder", params, hoelder_suite(g.seed, a.cases))
}
