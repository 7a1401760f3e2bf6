//! Both sides of the reverse Hardy inequality for radial test functions,
//! and exact panel checks of the reverse Hölder and Minkowski inequalities.
//!
//! Test functions are `f(r) = c g(r)^γ` on a radial interval `(r0, r1)` and
//! zero elsewhere. The cumulative mass
//!
//! ```text
//! F(r) = ∫_0^r s f     (direct)        F(r) = ∫_r^∞ s f     (conjugate)
//! ```
//!
//! is constant outside the support on one side and zero on the other, so the
//! outer integral `∫ U F^q` splits into a vanishing-mass region (where the
//! integrand is `+∞`), a constant region handled by a single shell integral,
//! and a variable region integrated numerically.

use std::cell::RefCell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conditions::{shell_integral, Form, HardyProblem};
use crate::error::{domain, HardyError, Result};
use crate::exponents::conjugate_exponent;
use crate::quadrature::{EndpointHints, ExtendedReal, QuadStatus, Radius, TailClass};
use crate::scalar::{lit, Real};
use crate::spaces::Growth;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family<T> {
    /// `v^(1-p')` cut off at radius `t`.
    Extremal { t: T },
    /// A gauge power on an arbitrary radial interval.
    Power,
}

/// Radial test function `coefficient · g(r)^gamma` on `support`, zero elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct TestFunction<T> {
    pub family: Family<T>,
    pub coefficient: T,
    pub gamma: T,
    pub support: (T, T),
}

impl<T: Real> TestFunction<T> {
    /// `g^gamma` on `(r0, r1)`; `r1` may be `+∞`.
    pub fn power(gamma: T, r0: T, r1: T) -> Result<Self> {
        if !gamma.is_finite() {
            return domain(format!("gamma must be finite, got {gamma}"));
        }
        if !(r0 >= T::zero() && r0 < r1 && r0.is_finite()) {
            return domain(format!("support must satisfy 0 <= r0 < r1, got ({r0}, {r1})"));
        }
        Ok(Self { family: Family::Power, coefficient: T::one(), gamma, support: (r0, r1) })
    }

    /// The function that vanishes identically.
    pub fn zero() -> Self {
        Self { family: Family::Power, coefficient: T::zero(), gamma: T::zero(), support: (T::zero(), T::infinity()) }
    }

    /// `c f` for a finite `c >= 0`.
    pub fn scaled(mut self, c: T) -> Result<Self> {
        if !(c >= T::zero() && c.is_finite()) {
            return domain(format!("scale must be finite and nonnegative, got {c}"));
        }
        self.coefficient = self.coefficient * c;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient == T::zero()
    }

    /// `f(r)` on the given space.
    pub fn eval(&self, problem: &HardyProblem<T>, r: T) -> Result<T> {
        if !(r > T::zero()) {
            return domain(format!("radius must be positive, got {r}"));
        }
        let (r0, r1) = self.support;
        if self.is_zero() || r <= r0 || r >= r1 {
            return Ok(T::zero());
        }
        Ok(self.coefficient * (self.gamma * problem.space.ln_gauge(Radius::new(r))).exp())
    }

    /// `c ∫_lo^hi s g^exponent` restricted to the support.
    fn mass(&self, problem: &HardyProblem<T>, exponent: T, lo: T, hi: T) -> Result<ExtendedReal<T>> {
        let lo = lo.max(self.support.0);
        let hi = hi.min(self.support.1);
        if self.is_zero() || !(lo < hi) {
            return Ok(ExtendedReal::zero());
        }
        let raw = match problem.space.shell_integral_closed_form(exponent, lo, hi) {
            Some(v) => v,
            None => shell_integral(&problem.space, exponent, lo, hi, &problem.numerics.integrator)?
                .conclusive("inner integral")?,
        };
        Ok(raw.scale(self.coefficient))
    }
}

/// `v^(1-p')` on the ball of radius `t` (direct) or its complement (conjugate).
pub fn extremal_function<T: Real>(problem: &HardyProblem<T>, t: T) -> Result<TestFunction<T>> {
    if !(t > T::zero() && t.is_finite()) {
        return domain(format!("t must be finite and positive, got {t}"));
    }
    let support = match problem.form {
        Form::Direct => (T::zero(), t),
        Form::Conjugate => (t, T::infinity()),
    };
    Ok(TestFunction { family: Family::Extremal { t }, coefficient: T::one(), gamma: problem.gamma(), support })
}

/// Inner integral of `f` over the ball of radius `r` or its complement.
pub fn cumulative<T: Real>(problem: &HardyProblem<T>, f: &TestFunction<T>, r: T) -> Result<ExtendedReal<T>> {
    if !(r > T::zero()) {
        return domain(format!("radius must be positive, got {r}"));
    }
    match problem.form {
        Form::Direct => f.mass(problem, f.gamma, T::zero(), r),
        Form::Conjugate => f.mass(problem, f.gamma, r, T::infinity()),
    }
}

/// `(∫ s f^p g^β)^(1/p)`.
pub fn weighted_norm<T: Real>(problem: &HardyProblem<T>, f: &TestFunction<T>) -> Result<ExtendedReal<T>> {
    if f.is_zero() {
        return Ok(ExtendedReal::zero());
    }
    let p = problem.pair.p();
    let unit = TestFunction { coefficient: T::one(), ..*f };
    let integral = unit.mass(problem, p * f.gamma + problem.beta, T::zero(), T::infinity())?;
    Ok(integral.powf(p.recip()).scale(f.coefficient))
}

/// A left-hand side value with the reason it vanished, if it did.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Lhs<T: Real> {
    pub value: ExtendedReal<T>,
    pub note: Option<String>,
}

/// Gap below which two exponential rates are treated as equal.
fn rate_slack<T: Real>(scale: T) -> T {
    lit::<T>(1e-12) * scale.abs().max(T::one())
}

fn growth_tail<T: Real>(g: Growth<T>, scale: T) -> TailClass<T> {
    if g.rate.abs() <= rate_slack(scale) {
        TailClass::Power(g.power)
    } else {
        Growth { rate: g.rate, power: g.power }.tail_class()
    }
}

/// Asymptotics of the cumulative mass at one end of the variable region.
enum Inner<T> {
    /// Infinite everywhere on the region.
    Infinite,
    /// `~ C r^power e^(rate r)`.
    Like(Growth<T>),
}

/// `∫ U F^q` over `(lo, hi)` for a test function, with the cause when it diverges.
fn outer_integral<T: Real>(
    problem: &HardyProblem<T>,
    f: &TestFunction<T>,
    lo: T,
    hi: T,
) -> Result<(ExtendedReal<T>, Option<String>)> {
    if !(lo < hi) {
        return Ok((ExtendedReal::zero(), None));
    }
    if f.is_zero() {
        return Ok((ExtendedReal::infinity(), Some("inner integral vanishes identically".to_string())));
    }
    let q = problem.pair.q();
    let space = &problem.space;
    let (r0, r1) = f.support;
    let dim = space.dimension();
    let ig = &problem.numerics.integrator;

    // region where the inner mass is zero, region where it is constant
    let (zero, constant, variable) = match problem.form {
        Form::Direct => ((T::zero(), r0), (r1, T::infinity()), (r0, r1)),
        Form::Conjugate => ((r1, T::infinity()), (T::zero(), r0), (r0, r1)),
    };
    let clip = |(a, b): (T, T)| (a.max(lo), b.min(hi));

    let (za, zb) = clip(zero);
    if za < zb {
        return Ok((ExtendedReal::infinity(), Some(format!("inner integral vanishes on ({za}, {zb})"))));
    }

    let mut total = ExtendedReal::zero();

    let (ka, kb) = clip(constant);
    if ka < kb {
        let c = f.mass(problem, f.gamma, r0, r1)?.powf(q);
        if !c.is_zero() {
            let res = shell_integral(space, problem.alpha, ka, kb, ig)?;
            if res.status == QuadStatus::Divergent {
                let cause = res.divergence.map(|c| c.to_string()).unwrap_or_default();
                return Ok((ExtendedReal::infinity(), Some(cause)));
            }
            total = total.add(c.mul(res.conclusive("outer integral")?));
        }
    }

    let (va, vb) = clip(variable);
    if va < vb {
        let inner_shell = space.shell_growth_at_infinity(f.gamma);
        let outer_shell = space.shell_growth_at_infinity(problem.alpha);
        let k = dim + f.gamma;
        let scale = outer_shell.rate.abs() + (q * inner_shell.rate).abs();

        // behaviour of F at the ends of the variable region that are 0 or ∞
        let at_zero = (va == T::zero()).then(|| match problem.form {
            Form::Direct if k <= T::zero() => Inner::Infinite,
            Form::Direct => Inner::Like(Growth { rate: T::zero(), power: k }),
            Form::Conjugate if k < T::zero() => Inner::Like(Growth { rate: T::zero(), power: k }),
            Form::Conjugate => Inner::Like(Growth::constant()),
        });
        let at_infinity = (vb == T::infinity()).then(|| {
            let tail = growth_tail(inner_shell, inner_shell.rate);
            match (problem.form, tail) {
                (Form::Direct, TailClass::ExpGrowth) => Inner::Like(inner_shell),
                (Form::Direct, TailClass::ExpDecay) => Inner::Like(Growth::constant()),
                (Form::Direct, TailClass::Power(m)) if m > -T::one() => {
                    Inner::Like(Growth { rate: T::zero(), power: m + T::one() })
                }
                (Form::Direct, TailClass::Power(_)) => Inner::Like(Growth::constant()),
                (Form::Conjugate, TailClass::ExpDecay) => Inner::Like(inner_shell),
                (Form::Conjugate, TailClass::Power(m)) if m < -T::one() => {
                    Inner::Like(Growth { rate: T::zero(), power: m + T::one() })
                }
                (Form::Conjugate, _) => Inner::Infinite,
            }
        });
        let inner_infinite = |x: &Option<Inner<T>>| matches!(x, Some(Inner::Infinite));
        // an infinite mass at the far end of the inner range makes F ≡ ∞ here
        let f_infinite = match problem.form {
            Form::Direct => inner_infinite(&at_zero),
            Form::Conjugate => inner_infinite(&at_infinity),
        };
        if !f_infinite {
            let hints = EndpointHints {
                power_at_zero: match &at_zero {
                    Some(Inner::Like(g)) => Some(space.shell_power_at_zero(problem.alpha) + q * g.power),
                    _ => None,
                },
                tail_class: match &at_infinity {
                    Some(Inner::Like(g)) => Some(growth_tail(
                        Growth { rate: outer_shell.rate + q * g.rate, power: outer_shell.power + q * g.power },
                        scale,
                    )),
                    _ => None,
                },
            };
            let failure: RefCell<Option<HardyError>> = RefCell::new(None);
            let exact = |r: Radius<T>| {
                let cum = match cumulative(problem, f, r.value()) {
                    Ok(c) => c,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        return T::nan();
                    }
                };
                let ln_u = space.ln_shell(problem.alpha, r);
                if cum.is_infinite() {
                    T::neg_infinity()
                } else {
                    ln_u + q * cum.ln()
                }
            };
            // radii outside the representable range continue the asymptotic law
            let s_min = T::min_positive_value().ln() + T::one();
            let s_max = T::max_value().ln() - T::one();
            let integrand = |r: Radius<T>| {
                let s = r.ln();
                if s < s_min {
                    match hints.power_at_zero {
                        Some(e) => exact(Radius::from_ln(s_min)) + e * (s - s_min),
                        None => T::neg_infinity(),
                    }
                } else if s > s_max {
                    match hints.tail_class {
                        Some(TailClass::Power(e)) => exact(Radius::from_ln(s_max)) + e * (s - s_max),
                        _ => T::neg_infinity(),
                    }
                } else {
                    exact(r)
                }
            };
            let res = ig.integrate_ln(integrand, va, vb, &hints, &[]);
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            let res = res?;
            if res.status == QuadStatus::Divergent {
                let cause = res.divergence.map(|c| c.to_string()).unwrap_or_default();
                return Ok((ExtendedReal::infinity(), Some(cause)));
            }
            total = total.add(res.conclusive("outer integral")?);
        }
    }
    Ok((total, None))
}

fn lhs_from<T: Real>(problem: &HardyProblem<T>, (a, note): (ExtendedReal<T>, Option<String>)) -> Lhs<T> {
    Lhs { value: a.powf(problem.pair.q().recip()), note }
}

/// `(∫_0^∞ U F^q)^(1/q)`.
pub fn lhs_full<T: Real>(problem: &HardyProblem<T>, f: &TestFunction<T>) -> Result<Lhs<T>> {
    Ok(lhs_from(problem, outer_integral(problem, f, T::zero(), T::infinity())?))
}

/// The outer integral restricted to `|x| >= t` (direct) or `|x| <= t` (conjugate).
pub fn lhs_restricted<T: Real>(problem: &HardyProblem<T>, f: &TestFunction<T>, t: T) -> Result<Lhs<T>> {
    if !(t > T::zero() && t.is_finite()) {
        return domain(format!("t must be finite and positive, got {t}"));
    }
    let range = match problem.form {
        Form::Direct => (t, T::infinity()),
        Form::Conjugate => (T::zero(), t),
    };
    Ok(lhs_from(problem, outer_integral(problem, f, range.0, range.1)?))
}

/// Both sides of the inequality for one test function and cut-off `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct RatioReport<T: Real> {
    pub t: T,
    pub lhs_full: ExtendedReal<T>,
    pub lhs_restricted: ExtendedReal<T>,
    pub rhs_norm: ExtendedReal<T>,
    /// `lhs_restricted / rhs_norm`; absent when the norm is zero or infinite.
    pub ratio_restricted: Option<ExtendedReal<T>>,
    pub divergence_note: Option<String>,
}

pub fn ratio_report<T: Real>(problem: &HardyProblem<T>, f: &TestFunction<T>, t: T) -> Result<RatioReport<T>> {
    let full = lhs_full(problem, f)?;
    let restricted = lhs_restricted(problem, f, t)?;
    let rhs = weighted_norm(problem, f)?;
    let ratio = if rhs.is_positive_finite() { restricted.value.div(rhs) } else { None };
    let mut notes = Vec::new();
    if let Some(n) = &full.note {
        notes.push(n.clone());
    }
    if let Some(n) = &restricted.note {
        notes.push(format!("restricted: {n}"));
    }
    Ok(RatioReport {
        t,
        lhs_full: full.value,
        lhs_restricted: restricted.value,
        rhs_norm: rhs,
        ratio_restricted: ratio,
        divergence_note: (!notes.is_empty()).then(|| notes.join("; ")),
    })
}

/// Both sides of an inequality `lhs >= rhs` and the margin `lhs - rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct CheckOutcome<T: Real> {
    pub lhs: ExtendedReal<T>,
    pub rhs: ExtendedReal<T>,
    pub margin: T,
}

fn panel_width<T: Real>(domain_: (T, T), panels: usize) -> Result<T> {
    let (a, b) = domain_;
    if !(a < b && a.is_finite() && b.is_finite()) {
        return domain(format!("interval must be finite and nonempty, got ({a}, {b})"));
    }
    if panels == 0 {
        return domain("at least one panel is required");
    }
    Ok((b - a) / lit::<T>(panels as f64))
}

fn check_values<T: Real>(values: &[T], name: &str) -> Result<()> {
    if let Some(v) = values.iter().find(|v| !(**v >= T::zero() && v.is_finite())) {
        return domain(format!("{name} values must be finite and nonnegative, found {v}"));
    }
    Ok(())
}

fn outcome<T: Real>(lhs: T, rhs: T) -> Result<CheckOutcome<T>> {
    Ok(CheckOutcome { lhs: ExtendedReal::new(lhs)?, rhs: ExtendedReal::new(rhs)?, margin: lhs - rhs })
}

/// Reverse Hölder `∫fg >= (∫f^p)^(1/p) (∫g^p')^(1/p')` for equal-width panels.
pub fn hoelder_check<T: Real>(f: &[T], g: &[T], p: T, domain_: (T, T)) -> Result<CheckOutcome<T>> {
    let pc = conjugate_exponent(p)?;
    if f.len() != g.len() {
        return domain(format!("f and g need the same panel count, got {} and {}", f.len(), g.len()));
    }
    check_values(f, "f")?;
    check_values(g, "g")?;
    if g.iter().any(|v| *v == T::zero()) {
        return domain("g must be positive on every panel so that the integral of g^p' is finite");
    }
    let h = panel_width(domain_, f.len())?;
    let lhs = f.iter().zip(g).fold(T::zero(), |acc, (a, b)| acc + *a * *b) * h;
    let fp = f.iter().fold(T::zero(), |acc, a| acc + a.powf(p)) * h;
    let gp = g.iter().fold(T::zero(), |acc, b| acc + b.powf(pc)) * h;
    outcome(lhs, fp.powf(p.recip()) * gp.powf(pc.recip()))
}

/// Panel values on an `rows × cols` grid, row `i` being the `i`-th `x` panel.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelGrid<T> {
    rows: usize,
    cols: usize,
    values: Vec<T>,
}

impl<T: Real> PanelGrid<T> {
    pub fn new(rows: usize, cols: usize, values: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 || values.len() != rows * cols {
            return domain(format!("grid of {rows}x{cols} panels needs {} values, got {}", rows * cols, values.len()));
        }
        check_values(&values, "F")?;
        Ok(Self { rows, cols, values })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> T>(rows: usize, cols: usize, mut f: F) -> Result<Self> {
        let mut values = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                values.push(f(i, j));
            }
        }
        Self::new(rows, cols, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.cols + j]
    }
}

/// Reverse Minkowski `[∫_X (∫_Y F dy)^q dx]^(1/q) >= ∫_Y (∫_X F^q dx)^(1/q) dy`.
///
/// Zero panels follow the extended-real rules: `0^q = ∞`, `∞^(1/q) = 0`.
pub fn minkowski_check<T: Real>(
    grid: &PanelGrid<T>,
    q: T,
    x_domain: (T, T),
    y_domain: (T, T),
) -> Result<CheckOutcome<T>> {
    if !(q < T::zero() && q.is_finite()) {
        return domain(format!("q must be finite and negative, got {q}"));
    }
    let dx = panel_width(x_domain, grid.rows)?;
    let dy = panel_width(y_domain, grid.cols)?;
    let inv_q = q.recip();
    let lhs_inner = (0..grid.rows).fold(T::zero(), |acc, i| {
        let row = (0..grid.cols).fold(T::zero(), |s, j| s + grid.get(i, j)) * dy;
        acc + row.powf(q)
    });
    let lhs = (lhs_inner * dx).powf(inv_q);
    let rhs = (0..grid.cols).fold(T::zero(), |acc, j| {
        let col = (0..grid.rows).fold(T::zero(), |s, i| s + grid.get(i, j).powf(q)) * dx;
        acc + col.powf(inv_q)
    }) * dy;
    outcome(lhs, rhs)
}

/// Summary of a seeded randomized property suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub cases: usize,
    /// Case indices whose margin fell below `-1e-9·max(lhs, 1)`.
    pub violations: Vec<usize>,
    /// Smallest `margin / max(lhs, 1)` over the random cases.
    #[serde(with = "crate::scalar::serde_float")]
    pub worst_relative_margin: f64,
    /// Largest `|margin| / max(lhs, 1)` over the equality cases.
    pub equality_max_deviation: f64,
}

impl SuiteReport {
    pub fn passed(&self, equality_tol: f64) -> bool {
        self.violations.is_empty() && self.equality_max_deviation <= equality_tol
    }
}

/// Default seed for the randomized suites.
pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// Violation threshold on `margin / max(lhs, 1)`.
pub const VIOLATION_TOL: f64 = 1e-9;

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

fn relative(o: &CheckOutcome<f64>) -> f64 {
    o.margin / o.lhs.value().max(1.0)
}

fn summarize(seed: u64, per_case: Vec<Result<(f64, f64)>>) -> Result<SuiteReport> {
    let mut worst = f64::INFINITY;
    let mut eq_dev: f64 = 0.0;
    let mut violations = Vec::new();
    let cases = per_case.len();
    for (i, r) in per_case.into_iter().enumerate() {
        let (rel, dev) = r?;
        if rel < -VIOLATION_TOL {
            violations.push(i);
        }
        worst = worst.min(rel);
        eq_dev = eq_dev.max(dev);
    }
    Ok(SuiteReport { seed, cases, violations, worst_relative_margin: worst, equality_max_deviation: eq_dev })
}

/// Random reverse Hölder cases with `p` cycling through `{0.3, 0.5, 0.7}`.
///
/// Each case also checks the equality configuration `f ∝ g^(p'/p)`.
pub fn hoelder_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    const PS: [f64; 3] = [0.3, 0.5, 0.7];
    let per_case: Vec<Result<(f64, f64)>> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let p = PS[i % PS.len()];
            let n = rng.gen_range(1..=64);
            let a = rng.gen_range(-5.0..5.0);
            let domain_ = (a, a + log_uniform(&mut rng, 1e-2, 1e2));
            let f: Vec<f64> =
                (0..n).map(|_| if rng.gen_bool(0.1) { 0.0 } else { log_uniform(&mut rng, 1e-3, 1e3) }).collect();
            let g: Vec<f64> = (0..n).map(|_| log_uniform(&mut rng, 1e-3, 1e3)).collect();
            let random = hoelder_check(&f, &g, p, domain_)?;
            let pc = conjugate_exponent(p)?;
            let c = log_uniform(&mut rng, 1e-2, 1e2);
            let f_eq: Vec<f64> = g.iter().map(|v| c * v.powf(pc / p)).collect();
            let eq = hoelder_check(&f_eq, &g, p, domain_)?;
            Ok((relative(&random), relative(&eq).abs()))
        })
        .collect();
    summarize(seed, per_case)
}

/// Random reverse Minkowski cases on `rows × cols` grids with `q` cycling
/// through `{-0.5, -1, -3}`.
///
/// Each case also checks a separable grid `g(x) h(y)`, where equality holds.
pub fn minkowski_suite(seed: u64, cases: usize, rows: usize, cols: usize) -> Result<SuiteReport> {
    const QS: [f64; 3] = [-0.5, -1.0, -3.0];
    let per_case: Vec<Result<(f64, f64)>> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let q = QS[i % QS.len()];
            let x0 = rng.gen_range(-5.0..5.0);
            let y0 = rng.gen_range(-5.0..5.0);
            let xd = (x0, x0 + log_uniform(&mut rng, 1e-1, 1e1));
            let yd = (y0, y0 + log_uniform(&mut rng, 1e-1, 1e1));
            let grid = PanelGrid::from_fn(rows, cols, |_, _| log_uniform(&mut rng, 1e-3, 1e3))?;
            let random = minkowski_check(&grid, q, xd, yd)?;
            let g: Vec<f64> = (0..rows).map(|_| log_uniform(&mut rng, 1e-3, 1e3)).collect();
            let h: Vec<f64> = (0..cols).map(|_| log_uniform(&mut rng, 1e-3, 1e3)).collect();
            let sep = PanelGrid::from_fn(rows, cols, |r, c| g[r] * h[c])?;
            let eq = minkowski_check(&sep, q, xd, yd)?;
            Ok((relative(&random), relative(&eq).abs()))
        })
        .collect();
    summarize(seed, per_case)
}
