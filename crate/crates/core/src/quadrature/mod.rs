//! One-dimensional integration on subintervals of `(0, ∞)`.
//!
//! Integrands are supplied as logarithms `ln f(r)` and integrated in the
//! variable `s = ln r`, which turns power-law endpoint behaviour into
//! exponential decay. Infinite ends in `s` are folded onto `[0, 1)` with
//! `s = s0 ± u/(1-u)`. Each piece is integrated by globally adaptive
//! 7/15-point Gauss–Kronrod panels whose sums are kept in scaled (log) form,
//! so values far outside the `f64` exponent range stay usable.
//!
//! Divergence is certified from [`EndpointHints`] when supplied, and from
//! the far-field slope of the integrand in `s` otherwise.

mod extended;
mod kronrod;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use extended::ExtendedReal;
pub use search::{infimum_search, InfimumResult, InfimumSearch};

use crate::error::{domain, HardyError, Result};
use crate::scalar::{lit, ln_sum_exp, Real};

/// A radius carried together with its logarithm.
///
/// The logarithm is authoritative: far from the origin or very close to it
/// `r` itself may over- or underflow while `ln r` stays exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radius<T> {
    r: T,
    ln: T,
}

impl<T: Real> Radius<T> {
    pub fn new(r: T) -> Self {
        Self { r, ln: r.ln() }
    }

    pub fn from_ln(ln: T) -> Self {
        Self { r: ln.exp(), ln }
    }

    pub fn value(&self) -> T {
        self.r
    }

    pub fn ln(&self) -> T {
        self.ln
    }
}

/// Asymptotic class of an integrand as `r → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", content = "exponent", rename_all = "snake_case")]
pub enum TailClass<T> {
    /// `~ c r^e`
    Power(T),
    ExpDecay,
    ExpGrowth,
}

/// Optional analytic knowledge about the integrand's endpoint behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EndpointHints<T> {
    /// `e` with `f(r) ~ c r^e` as `r → 0⁺`.
    pub power_at_zero: Option<T>,
    pub tail_class: Option<TailClass<T>>,
}

impl<T: Real> EndpointHints<T> {
    pub fn none() -> Self {
        Self { power_at_zero: None, tail_class: None }
    }

    pub fn at_zero(e: T) -> Self {
        Self { power_at_zero: Some(e), tail_class: None }
    }

    pub fn at_infinity(tail: TailClass<T>) -> Self {
        Self { power_at_zero: None, tail_class: Some(tail) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub rel: T,
    pub abs: T,
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self { rel: T::default_rel_tol(), abs: T::default_abs_tol() }
    }
}

impl<T: Real> Tolerance<T> {
    pub fn relative(rel: T) -> Self {
        Self { rel, abs: T::zero() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadStatus {
    Converged,
    Divergent,
    Inconclusive,
}

/// Why an integral was classified as divergent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DivergenceCause<T> {
    /// Power singularity `r^e`, `e <= -1`, at the origin.
    OriginPower(T),
    /// Power tail `r^e`, `e >= -1`, at infinity.
    TailPower(T),
    TailExpGrowth,
    /// Integrand does not decay in `ln r` toward the origin.
    OriginNoDecay,
    /// Integrand does not decay in `ln r` toward infinity.
    TailNoDecay,
    /// The integrand itself is `+∞` at a sample radius.
    InfiniteIntegrand(T),
    /// Partial sums grew by more than `1e30` under refinement.
    UnboundedPartialSums,
}

impl<T: Real> fmt::Display for DivergenceCause<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OriginPower(e) => write!(f, "origin, exponent {e}"),
            Self::TailPower(e) => write!(f, "infinity, exponent {e}"),
            Self::TailExpGrowth => write!(f, "infinity, exponential growth"),
            Self::OriginNoDecay => write!(f, "origin, no decay in ln r"),
            Self::TailNoDecay => write!(f, "infinity, no decay in ln r"),
            Self::InfiniteIntegrand(r) => write!(f, "integrand infinite at r = {r}"),
            Self::UnboundedPartialSums => write!(f, "unbounded partial sums"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T: Real> {
    pub value: ExtendedReal<T>,
    /// Meaningful only when `value` is finite.
    pub abs_error_estimate: T,
    pub status: QuadStatus,
    pub subdivisions: usize,
    pub divergence: Option<DivergenceCause<T>>,
}

impl<T: Real> QuadResult<T> {
    fn divergent(cause: DivergenceCause<T>, subdivisions: usize) -> Self {
        Self {
            value: ExtendedReal::infinity(),
            abs_error_estimate: T::infinity(),
            status: QuadStatus::Divergent,
            subdivisions,
            divergence: Some(cause),
        }
    }

    /// The value, or a numerical-failure error when inconclusive.
    pub fn conclusive(self, what: &str) -> Result<ExtendedReal<T>> {
        match self.status {
            QuadStatus::Inconclusive => Err(HardyError::NumericalFailure(format!(
                "{what}: quadrature inconclusive after {} panels",
                self.subdivisions
            ))),
            _ => Ok(self.value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Zero,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convergence {
    Converges,
    Diverges,
}

/// Integrability of `r^e` at the given endpoint.
pub fn classify_power_convergence<T: Real>(e: T, endpoint: Endpoint) -> Convergence {
    let ok = match endpoint {
        Endpoint::Zero => e > -T::one(),
        Endpoint::Infinity => e < -T::one(),
    };
    if ok {
        Convergence::Converges
    } else {
        Convergence::Diverges
    }
}

/// Default maximum number of panels.
pub const DEFAULT_MAX_PANELS: usize = 1_000_000;

/// Adaptive integrator configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrator<T> {
    pub tol: Tolerance<T>,
    pub max_panels: usize,
}

impl<T: Real> Default for Integrator<T> {
    fn default() -> Self {
        Self { tol: Tolerance::default(), max_panels: DEFAULT_MAX_PANELS }
    }
}

/// `∫_lo^hi f(r) dr` for a nonnegative integrand with default panel budget.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    hints: &EndpointHints<T>,
    tol: Tolerance<T>,
) -> Result<QuadResult<T>> {
    Integrator { tol, max_panels: DEFAULT_MAX_PANELS }.integrate(f, lo, hi, hints)
}

#[derive(Debug, Clone, Copy)]
enum Map<T> {
    /// `s = u`
    Identity,
    /// `s = end - u/(1-u)`
    Left { end: T },
    /// `s = start + u/(1-u)`
    Right { start: T },
}

impl<T: Real> Map<T> {
    /// `(s, ln ds/du)`
    fn apply(&self, u: T) -> (T, T) {
        match *self {
            Map::Identity => (u, T::zero()),
            Map::Left { end } => {
                let w = T::one() - u;
                (end - u / w, lit::<T>(-2.0) * w.ln())
            }
            Map::Right { start } => {
                let w = T::one() - u;
                (start + u / w, lit::<T>(-2.0) * w.ln())
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    piece: usize,
    a: T,
    b: T,
    ln_val: T,
    ln_err: T,
}

enum EvalIssue<T> {
    Nan(T),
    Infinite(T),
}

impl<T: Real> Integrator<T> {
    pub fn new(tol: Tolerance<T>) -> Self {
        Self { tol, ..Self::default() }
    }

    /// `∫_lo^hi f(r) dr` for a nonnegative `f` given by value.
    pub fn integrate<F: Fn(T) -> T>(&self, f: F, lo: T, hi: T, hints: &EndpointHints<T>) -> Result<QuadResult<T>> {
        // Radii that under- or overflow `T` cannot be passed to `f`; the log
        // integrand is continued there as a power law.
        let ln_at = |s: T| f(s.exp()).ln();
        // f itself may overflow near the extreme radii; start the law where it is finite
        let finite_from = |start: T, step: T| {
            let mut s = start;
            for _ in 0..400 {
                if ln_at(s) < T::infinity() {
                    break;
                }
                s = s + step;
            }
            s
        };
        let s_min =
            if lo == T::zero() { finite_from(T::min_positive_value().ln() + T::one(), lit(4.0)) } else { T::zero() };
        let s_max =
            if hi == T::infinity() { finite_from(T::max_value().ln() - T::one(), lit(-4.0)) } else { T::zero() };
        let edge = |s_edge: T, step: T, hint: Option<T>| {
            let g = ln_at(s_edge);
            let slope = hint.unwrap_or_else(|| (ln_at(s_edge + step) - g) / step);
            (s_edge, g, slope)
        };
        let tail_power = match hints.tail_class {
            Some(TailClass::Power(e)) => Some(e),
            _ => None,
        };
        let low = (lo == T::zero()).then(|| edge(s_min, T::one(), hints.power_at_zero));
        let high = (hi == T::infinity()).then(|| edge(s_max, -T::one(), tail_power));
        let continue_from = |(s_edge, g, slope): (T, T, T), s: T| {
            if g == T::neg_infinity() {
                g
            } else {
                g + slope * (s - s_edge)
            }
        };
        self.integrate_ln(
            |r: Radius<T>| {
                let s = r.ln();
                match (low, high) {
                    (Some(l), _) if s < s_min => continue_from(l, s),
                    (_, Some(h)) if s > s_max => continue_from(h, s),
                    _ => ln_at(s),
                }
            },
            lo,
            hi,
            hints,
            &[],
        )
    }

    /// `∫_lo^hi exp(ln_f(r)) dr`, splitting additionally at `knots`.
    pub fn integrate_ln<F: Fn(Radius<T>) -> T>(
        &self,
        ln_f: F,
        lo: T,
        hi: T,
        hints: &EndpointHints<T>,
        knots: &[T],
    ) -> Result<QuadResult<T>> {
        if lo.is_nan() || hi.is_nan() || lo < T::zero() || !(lo < hi) || lo == T::infinity() {
            return domain(format!("integration bounds must satisfy 0 <= lo < hi, got ({lo}, {hi})"));
        }
        if !(self.tol.rel >= T::zero() && self.tol.abs >= T::zero()) {
            return domain("tolerances must be nonnegative");
        }
        let left_open = lo == T::zero();
        let right_open = hi == T::infinity();

        if left_open {
            if let Some(e) = hints.power_at_zero {
                if classify_power_convergence(e, Endpoint::Zero) == Convergence::Diverges {
                    return Ok(QuadResult::divergent(DivergenceCause::OriginPower(e), 0));
                }
            }
        }
        if right_open {
            match hints.tail_class {
                Some(TailClass::ExpGrowth) => return Ok(QuadResult::divergent(DivergenceCause::TailExpGrowth, 0)),
                Some(TailClass::Power(e))
                    if classify_power_convergence(e, Endpoint::Infinity) == Convergence::Diverges =>
                {
                    return Ok(QuadResult::divergent(DivergenceCause::TailPower(e), 0))
                }
                _ => {}
            }
        }

        let g_s = |s: T| ln_f(Radius::from_ln(s)) + s;

        // s-breakpoints
        let mut cuts: Vec<T> =
            knots.iter().copied().filter(|&k| k > lo && k < hi && k.is_finite()).map(|k| k.ln()).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite knots"));
        cuts.dedup();
        if !left_open {
            cuts.insert(0, lo.ln());
        }
        if !right_open {
            cuts.push(hi.ln());
        }
        if cuts.is_empty() {
            cuts.push(T::zero());
        }

        let far = [lit::<T>(200.0), lit::<T>(400.0)];
        if left_open && hints.power_at_zero.is_none() {
            let end = cuts[0];
            if no_decay(g_s(end - far[0]), g_s(end - far[1])) {
                return Ok(QuadResult::divergent(DivergenceCause::OriginNoDecay, 0));
            }
        }
        if right_open && hints.tail_class.is_none() {
            let start = *cuts.last().expect("nonempty");
            if no_decay(g_s(start + far[0]), g_s(start + far[1])) {
                return Ok(QuadResult::divergent(DivergenceCause::TailNoDecay, 0));
            }
        }

        let mut pieces: Vec<(Map<T>, T, T)> = Vec::new();
        if left_open {
            pieces.push((Map::Left { end: cuts[0] }, T::zero(), T::one()));
        }
        for w in cuts.windows(2) {
            pieces.push((Map::Identity, w[0], w[1]));
        }
        if right_open {
            pieces.push((Map::Right { start: *cuts.last().expect("nonempty") }, T::zero(), T::one()));
        }

        let eval = |piece: usize, a: T, b: T| -> std::result::Result<Segment<T>, EvalIssue<T>> {
            let map = pieces[piece].0;
            let g = |u: T| {
                let (s, ln_jac) = map.apply(u);
                if s.is_infinite() {
                    // `1 - u` rounded to zero: the folded end itself
                    return T::neg_infinity();
                }
                g_s(s) + ln_jac
            };
            kronrod::panel(g, a, b).map(|(ln_val, ln_err)| Segment { piece, a, b, ln_val, ln_err }).map_err(|u| {
                let (s, _) = map.apply(u);
                let r = s.exp();
                if g(u).is_nan() {
                    EvalIssue::Nan(r)
                } else {
                    EvalIssue::Infinite(r)
                }
            })
        };

        let mut segments: Vec<Segment<T>> = Vec::new();
        for (idx, &(map, u_lo, u_hi)) in pieces.iter().enumerate() {
            for (a, b) in initial_partition(map, u_lo, u_hi) {
                match eval(idx, a, b) {
                    Ok(seg) => segments.push(seg),
                    Err(issue) => return self.issue(issue, segments.len()),
                }
            }
        }

        let ln_rel = self.tol.rel.ln();
        let ln_abs = self.tol.abs.ln();
        let growth_cap = lit::<T>(1e30).ln();
        let mut first_total: Option<T> = None;
        loop {
            let total = ln_sum_exp(segments.iter().map(|s| s.ln_val));
            let err = ln_sum_exp(segments.iter().map(|s| s.ln_err));
            let n = segments.len();
            if total == T::infinity() {
                return Ok(QuadResult::divergent(DivergenceCause::UnboundedPartialSums, n));
            }
            let target = ln_abs.max(ln_rel + total);
            if err <= target {
                return Ok(QuadResult {
                    value: ExtendedReal::from_ln(total),
                    abs_error_estimate: err.exp(),
                    status: QuadStatus::Converged,
                    subdivisions: n,
                    divergence: None,
                });
            }
            match first_total {
                None => first_total = Some(total),
                Some(t0) if total - t0 > growth_cap => {
                    return Ok(QuadResult::divergent(DivergenceCause::UnboundedPartialSums, n));
                }
                _ => {}
            }
            let inconclusive = QuadResult {
                value: ExtendedReal::from_ln(total),
                abs_error_estimate: err.exp(),
                status: QuadStatus::Inconclusive,
                subdivisions: n,
                divergence: None,
            };
            if n >= self.max_panels {
                return Ok(inconclusive);
            }
            let threshold = target - lit::<T>(n as f64).ln();
            let mut budget = self.max_panels - n;
            let mut next = Vec::with_capacity(n + n / 2);
            let mut split_any = false;
            for seg in segments {
                if budget > 0 && seg.ln_err > threshold && splittable(seg.a, seg.b) {
                    let mid = (seg.a + seg.b) * lit(0.5);
                    for (a, b) in [(seg.a, mid), (mid, seg.b)] {
                        match eval(seg.piece, a, b) {
                            Ok(s) => next.push(s),
                            Err(issue) => return self.issue(issue, n),
                        }
                    }
                    budget -= 1;
                    split_any = true;
                } else {
                    next.push(seg);
                }
            }
            segments = next;
            if !split_any {
                return Ok(inconclusive);
            }
        }
    }

    fn issue(&self, issue: EvalIssue<T>, n: usize) -> Result<QuadResult<T>> {
        match issue {
            EvalIssue::Nan(r) => Err(HardyError::NumericalFailure(format!("integrand is NaN at r = {r}"))),
            EvalIssue::Infinite(r) => Ok(QuadResult::divergent(DivergenceCause::InfiniteIntegrand(r), n)),
        }
    }
}

/// No decay between the two far samples (first nearer, second farther).
fn no_decay<T: Real>(near: T, far: T) -> bool {
    if far.is_nan() || near.is_nan() {
        return false;
    }
    if far == T::infinity() {
        return true;
    }
    far > T::neg_infinity() && far >= near
}

fn splittable<T: Real>(a: T, b: T) -> bool {
    let scale = a.abs().max(b.abs()).max(T::one());
    (b - a) > lit::<T>(64.0) * T::epsilon() * scale
}

/// Starting panels: geometric toward both ends of a folded infinite piece.
fn initial_partition<T: Real>(map: Map<T>, lo: T, hi: T) -> Vec<(T, T)> {
    let mut pts: Vec<T> = Vec::new();
    match map {
        Map::Identity => {
            let n = 4;
            for i in 0..=n {
                pts.push(lo + (hi - lo) * lit::<T>(i as f64 / n as f64));
            }
        }
        Map::Left { .. } | Map::Right { .. } => {
            pts.push(T::zero());
            for k in (1..=40).rev() {
                pts.push(lit::<T>(0.5f64.powi(k)));
            }
            for k in 2..=20 {
                pts.push(lit::<T>(1.0 - 0.5f64.powi(k)));
            }
            pts.push(T::one());
            pts.dedup();
        }
    }
    pts.windows(2).filter(|w| w[1] > w[0]).map(|w| (w[0], w[1])).collect()
}
