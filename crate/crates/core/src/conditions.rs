//! Condition functions `D₁(t)`, `D₂(t)` and the constants built from them.
//!
//! For radial power weights `u = g^α`, `v = g^β` the direct form reads
//!
//! ```text
//! D₁(t) = (∫_t^∞ s g^α)^(1/q) · (∫_0^t s g^γ)^(1/p')        γ = β(1 - p')
//! ```
//!
//! and the conjugate form swaps the two ranges. Both exponents `1/q` and
//! `1/p'` are negative, so a divergent factor sends `D` to zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, HardyError, Result};
use crate::exponents::{sandwich, ExponentPair};
use crate::quadrature::{
    DivergenceCause, EndpointHints, ExtendedReal, InfimumSearch, Integrator, QuadResult, QuadStatus, Radius, TailClass,
    Tolerance,
};
use crate::scalar::{lit, Real};
use crate::spaces::RadialSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    /// Inner integral over the ball `B(a, |x|)`.
    Direct,
    /// Inner integral over the complement of the ball.
    Conjugate,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Direct => "direct",
            Form::Conjugate => "conjugate",
        })
    }
}

impl std::str::FromStr for Form {
    type Err = HardyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Form::Direct),
            "conjugate" => Ok(Form::Conjugate),
            other => Err(HardyError::Parse(format!("unknown form '{other}', expected direct or conjugate"))),
        }
    }
}

/// Numerical settings shared by every computation on a problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Numerics<T> {
    pub integrator: Integrator<T>,
    pub search: InfimumSearch<T>,
}

impl<T: Real> Default for Numerics<T> {
    fn default() -> Self {
        Self {
            integrator: Integrator { tol: Tolerance::relative(T::default_rel_tol()), ..Integrator::default() },
            search: InfimumSearch::default(),
        }
    }
}

/// Weighted reverse Hardy problem with `u = g^alpha`, `v = g^beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct HardyProblem<T> {
    pub space: RadialSpace<T>,
    pub alpha: T,
    pub beta: T,
    pub pair: ExponentPair<T>,
    pub form: Form,
    #[serde(skip)]
    pub numerics: Numerics<T>,
}

impl<T: Real> HardyProblem<T> {
    pub fn new(space: RadialSpace<T>, alpha: T, beta: T, pair: ExponentPair<T>, form: Form) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return domain(format!("weight exponents must be finite, got alpha={alpha}, beta={beta}"));
        }
        Ok(Self { space: space.validated()?, alpha, beta, pair, form, numerics: Numerics::default() })
    }

    pub fn with_numerics(mut self, numerics: Numerics<T>) -> Self {
        self.numerics = numerics;
        self
    }

    /// `γ = β(1 - p')`, the exponent of `v^(1-p')`.
    pub fn gamma(&self) -> T {
        self.beta * (T::one() - self.pair.p_conj())
    }
}

/// `∫_lo^hi s(r) g(r)^exponent dr` with endpoint hints taken from the geometry.
pub fn shell_integral<T: Real>(
    space: &RadialSpace<T>,
    exponent: T,
    lo: T,
    hi: T,
    integrator: &Integrator<T>,
) -> Result<QuadResult<T>> {
    // far out the shell is an exact exponential; sampling it there only adds roundoff
    if let Some(far) = space.far_radius() {
        if hi > far {
            let tail = space.shell_integral_far(exponent, lo.max(far), hi).expect("range lies beyond far_radius");
            if tail.is_infinite() {
                let cause = match space.shell_growth_at_infinity(exponent).tail_class() {
                    TailClass::Power(e) => DivergenceCause::TailPower(e),
                    _ => DivergenceCause::TailExpGrowth,
                };
                return Ok(QuadResult {
                    value: tail,
                    abs_error_estimate: T::infinity(),
                    status: QuadStatus::Divergent,
                    subdivisions: 0,
                    divergence: Some(cause),
                });
            }
            let tail_err = tail.value() * T::epsilon() * lit(16.0);
            if lo >= far {
                return Ok(QuadResult {
                    value: tail,
                    abs_error_estimate: tail_err,
                    status: QuadStatus::Converged,
                    subdivisions: 0,
                    divergence: None,
                });
            }
            let mut near = shell_integral(space, exponent, lo, far, integrator)?;
            if near.status == QuadStatus::Converged {
                near.value = near.value.add(tail);
                near.abs_error_estimate = near.abs_error_estimate + tail_err;
            }
            return Ok(near);
        }
    }
    let hints = EndpointHints {
        power_at_zero: (lo == T::zero()).then(|| space.shell_power_at_zero(exponent)),
        tail_class: (hi == T::infinity()).then(|| space.shell_growth_at_infinity(exponent).tail_class()),
    };
    integrator.integrate_ln(|r: Radius<T>| space.ln_shell(exponent, r), lo, hi, &hints, &[])
}

fn check_t<T: Real>(t: T) -> Result<()> {
    if !(t > T::zero()) || !t.is_finite() {
        return domain(format!("t must be finite and positive, got {t}"));
    }
    Ok(())
}

/// `∫_t^∞ s g^α`, the `u`-mass outside the ball of radius `t`.
pub fn exterior_u_integral<T: Real>(problem: &HardyProblem<T>, t: T) -> Result<QuadResult<T>> {
    check_t(t)?;
    shell_integral(&problem.space, problem.alpha, t, T::infinity(), &problem.numerics.integrator)
}

/// `∫_0^t s g^γ`, the `v^(1-p')`-mass of the ball of radius `t`.
pub fn ball_v_integral<T: Real>(problem: &HardyProblem<T>, t: T) -> Result<QuadResult<T>> {
    check_t(t)?;
    shell_integral(&problem.space, problem.gamma(), T::zero(), t, &problem.numerics.integrator)
}

/// The two factors of `D(t)`: the `u` integral and the `v^(1-p')` integral.
pub fn d_factors<T: Real>(problem: &HardyProblem<T>, t: T) -> Result<(QuadResult<T>, QuadResult<T>)> {
    check_t(t)?;
    let ig = &problem.numerics.integrator;
    let space = &problem.space;
    match problem.form {
        Form::Direct => Ok((exterior_u_integral(problem, t)?, ball_v_integral(problem, t)?)),
        Form::Conjugate => Ok((
            shell_integral(space, problem.alpha, T::zero(), t, ig)?,
            shell_integral(space, problem.gamma(), t, T::infinity(), ig)?,
        )),
    }
}

/// `D₁(t)` (direct) or `D₂(t)` (conjugate).
pub fn d_function<T: Real>(problem: &HardyProblem<T>, t: T) -> Result<ExtendedReal<T>> {
    let (iu, iv) = d_factors(problem, t)?;
    let iu = iu.conclusive("u integral")?;
    let iv = iv.conclusive("v integral")?;
    Ok(iu.powf(problem.pair.q().recip()).mul(iv.powf(problem.pair.p_conj().recip())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredicateKind {
    /// Necessary and sufficient.
    Iff,
    /// Sufficient only.
    Sufficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateOutcome {
    pub name: String,
    pub satisfied: bool,
    pub kind: PredicateKind,
}

/// Outcome of the infimum search for `D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ConditionReport<T: Real> {
    #[serde(rename = "D")]
    pub d: ExtendedReal<T>,
    #[serde(with = "crate::scalar::serde_float")]
    pub ln_d: T,
    pub t_star: T,
    pub at_boundary: bool,
    /// `D` is finite, positive and attained inside the searched range.
    pub infimum_positive: bool,
    pub closed_form: Option<T>,
    pub balance_exponent: Option<T>,
    pub predicate: Vec<PredicateOutcome>,
    /// `(k_sup · D, D)`.
    pub sandwich: Option<(T, T)>,
    pub warning: Option<String>,
}

/// Relative slack for the equalities and non-strict inequalities of the predicates.
fn slack<T: Real>(scale: T) -> T {
    lit::<T>(1e-12).max(T::epsilon() * lit(16.0)) * scale.abs().max(T::one())
}

/// `(Q + α)/q + (Q + γ)/p'`; the exponent of `t` in `D(t)` on power-type spaces.
pub fn balance_exponent<T: Real>(problem: &HardyProblem<T>) -> Result<T> {
    if !problem.space.is_power_type() {
        return Err(HardyError::UnsupportedSpace(format!(
            "balance exponent needs a homogeneous or flat space, got {}",
            problem.space
        )));
    }
    let q_dim = problem.space.dimension();
    Ok((q_dim + problem.alpha) / problem.pair.q() + (q_dim + problem.gamma()) / problem.pair.p_conj())
}

/// Exact `D` on power-type spaces when the form's admissibility conditions hold.
pub fn homogeneous_closed_form<T: Real>(problem: &HardyProblem<T>) -> Result<Option<T>> {
    let balance = balance_exponent(problem)?;
    let q_dim = problem.space.dimension();
    let (a, c) = (q_dim + problem.alpha, q_dim + problem.gamma());
    let balanced = balance.abs() <= slack(a / problem.pair.q()) + slack(c / problem.pair.p_conj());
    let signs = match problem.form {
        Form::Direct => a < T::zero() && c > T::zero(),
        Form::Conjugate => a > T::zero() && c < T::zero(),
    };
    if !(signs && balanced) {
        return Ok(None);
    }
    let sphere = problem.space.sphere_measure();
    let ln = (sphere / a.abs()).ln() / problem.pair.q() + (sphere / c.abs()).ln() / problem.pair.p_conj();
    Ok(Some(ln.exp()))
}

/// The admissibility inequalities for the problem's geometry and form.
pub fn sufficient_predicate<T: Real>(problem: &HardyProblem<T>) -> Vec<PredicateOutcome> {
    let (q, pc) = (problem.pair.q(), problem.pair.p_conj());
    let dim = problem.space.dimension();
    let (a, c) = (dim + problem.alpha, dim + problem.gamma());
    let outcome = |name: &str, satisfied: bool, kind| PredicateOutcome { name: name.to_string(), satisfied, kind };

    if problem.space.is_power_type() {
        let balance = a / q + c / pc;
        let balanced = balance.abs() <= slack(a / q) + slack(c / pc);
        let kind = PredicateKind::Iff;
        let balance_name = "(Q+alpha)/q + (Q+beta(1-p'))/p' = 0";
        match problem.form {
            Form::Direct => vec![
                outcome("alpha+Q < 0", a < T::zero(), kind),
                outcome("beta(1-p')+Q > 0", c > T::zero(), kind),
                outcome(balance_name, balanced, kind),
            ],
            Form::Conjugate => vec![
                outcome("alpha+Q > 0", a > T::zero(), kind),
                outcome("beta(1-p')+Q < 0", c < T::zero(), kind),
                outcome(balance_name, balanced, kind),
            ],
        }
    } else {
        let lhs = a / q + c / pc;
        let rhs = q.recip() + pc.recip();
        let third = lhs >= rhs - slack(lhs.abs().max(rhs.abs()));
        let kind = PredicateKind::Sufficient;
        let third_name = "(alpha+n)/q + (beta(1-p')+n)/p' >= 1/q + 1/p'";
        match problem.form {
            Form::Direct => vec![
                outcome("0 <= alpha+n < 1", a >= -slack(a) && a < T::one(), kind),
                outcome("beta(1-p')+n > 0", c > T::zero(), kind),
                outcome(third_name, third, kind),
            ],
            Form::Conjugate => vec![
                outcome("alpha+n > 0", a > T::zero(), kind),
                outcome("1 > beta(1-p')+n >= 0", c < T::one() && c >= -slack(c), kind),
                outcome(third_name, third, kind),
            ],
        }
    }
}

/// Infimum of `D(t)` over the configured search range, with diagnostics.
pub fn condition_constant<T: Real>(problem: &HardyProblem<T>) -> Result<ConditionReport<T>> {
    let found = problem.numerics.search.run(|t| d_function(problem, t))?;
    let d = found.value;

    let (closed_form, balance) = if problem.space.is_power_type() {
        (homogeneous_closed_form(problem)?, Some(balance_exponent(problem)?))
    } else {
        (None, None)
    };
    let predicate = sufficient_predicate(problem);
    // a positive D below the smallest float has no representable bracket
    let sandwich = match d.value() {
        v if d.is_positive_finite() && v > T::zero() && v.is_finite() => Some(sandwich(&problem.pair, v)?),
        _ => None,
    };

    let mut warnings = Vec::new();
    if found.at_boundary {
        warnings.push(format!(
            "infimum not attained on searched range; D treated as the boundary value at t = {}",
            found.t_star
        ));
    }
    if d.is_zero() {
        let (iu, iv) = d_factors(problem, found.t_star)?;
        for (label, res) in [("u integral", iu), ("v^(1-p') integral", iv)] {
            if res.status == QuadStatus::Divergent {
                let cause = res.divergence.map(|c| c.to_string()).unwrap_or_default();
                warnings.push(format!("{label} diverges ({cause}), so D = 0"));
            }
        }
        let failing: Vec<&str> = predicate.iter().filter(|p| !p.satisfied).map(|p| p.name.as_str()).collect();
        if !failing.is_empty() {
            warnings.push(format!("failing conditions: {}", failing.join("; ")));
        }
    }
    if found.failed_nodes > 0 {
        warnings.push(format!("{} search nodes failed and were skipped", found.failed_nodes));
    }

    Ok(ConditionReport {
        d,
        ln_d: d.ln(),
        t_star: found.t_star,
        at_boundary: found.at_boundary,
        infimum_positive: d.is_positive_finite() && !found.at_boundary,
        closed_form,
        balance_exponent: balance,
        predicate,
        sandwich,
        warning: (!warnings.is_empty()).then(|| warnings.join("; ")),
    })
}
