#![allow(dead_code)]

use rhardy_core::{ExponentPair, Form, HardyProblem, RadialSpace};

pub fn pair() -> ExponentPair<f64> {
    ExponentPair::new(0.5, -2.0).unwrap()
}

pub fn problem(space: RadialSpace<f64>, alpha: f64, beta: f64, form: Form) -> HardyProblem<f64> {
    HardyProblem::new(space, alpha, beta, pair(), form).unwrap()
}

/// The R² problem with `u = |x|^-6`, `v = 1`.
pub fn r2_direct() -> HardyProblem<f64> {
    problem(RadialSpace::euclidean(2).unwrap(), -6.0, 0.0, Form::Direct)
}

/// The hyperbolic-plane problem with `u = sinh^-2`, `v = sinh^-1/2`.
pub fn h2_direct() -> HardyProblem<f64> {
    problem(RadialSpace::hyperbolic(2).unwrap(), -2.0, -0.5, Form::Direct)
}

/// `(π/2)^(-1/2) / π`.
pub fn r2_closed_form() -> f64 {
    use std::f64::consts::PI;
    (PI / 2.0).powf(-0.5) / PI
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// Expected size of `lhs_full`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhsClass {
    /// The outer integral diverges.
    Zero,
    Positive,
    /// The inner mass is infinite, so the outer integrand vanishes.
    Infinite,
}

/// Shell asymptotics of a space: `s g^e ~ r^(dim-1+e)` at the origin, and at
/// infinity `r^(dim-1+e)` when `rate = 0`, otherwise `e^(rate (dim-1+e) r)`.
#[derive(Debug, Clone, Copy)]
pub struct Geometry {
    pub dim: f64,
    pub rate: f64,
}

impl Geometry {
    /// `(exponential rate, power)` of `s g^e` at infinity.
    fn tail(&self, e: f64) -> (f64, f64) {
        if self.rate > 0.0 {
            (self.rate * (self.dim - 1.0 + e), 0.0)
        } else {
            (0.0, self.dim - 1.0 + e)
        }
    }
}

fn integrable_at_infinity((rate, power): (f64, f64)) -> bool {
    rate < 0.0 || (rate == 0.0 && power < -1.0)
}

/// Classifies `lhs_full` for `f = g^gamma_f` on `(r0, r1)` from exponents alone.
pub fn classify_lhs(geo: Geometry, alpha: f64, q: f64, gamma_f: f64, form: Form, r0: f64, r1: f64) -> LhsClass {
    // U ~ r^a0 at the origin; the inner mass varies like r^k there
    let a0 = alpha + geo.dim - 1.0;
    let k = gamma_f + geo.dim;
    let (ua, up) = geo.tail(alpha);
    let (fa, fp) = geo.tail(gamma_f);
    let verdict = |origin: bool, tail: bool| if origin && tail { LhsClass::Positive } else { LhsClass::Zero };
    match form {
        Form::Direct => {
            if r0 > 0.0 {
                return LhsClass::Zero;
            }
            if k <= 0.0 {
                return LhsClass::Infinite;
            }
            let origin = a0 + q * k > -1.0;
            let tail = if r1.is_finite() {
                integrable_at_infinity((ua, up))
            } else {
                // growth of the inner mass, constant once it converges
                let (gr, gp) = if fa > 0.0 {
                    (fa, fp)
                } else if fa == 0.0 && fp > -1.0 {
                    (0.0, fp + 1.0)
                } else {
                    (0.0, 0.0)
                };
                integrable_at_infinity((ua + q * gr, up + q * gp))
            };
            verdict(origin, tail)
        }
        Form::Conjugate => {
            if r1.is_finite() {
                return LhsClass::Zero;
            }
            if !integrable_at_infinity((fa, fp)) {
                return LhsClass::Infinite;
            }
            let (gr, gp) = if fa < 0.0 { (fa, fp) } else { (0.0, fp + 1.0) };
            let tail = integrable_at_infinity((ua + q * gr, up + q * gp));
            let origin = if r0 == 0.0 && k < 0.0 { a0 + q * k > -1.0 } else { a0 > -1.0 };
            verdict(origin, tail)
        }
    }
}

/// Distance of a draw from every exponent threshold the classifier uses.
pub fn classifier_margin(geo: Geometry, alpha: f64, q: f64, gamma_f: f64) -> f64 {
    let a0 = alpha + geo.dim - 1.0;
    let k = gamma_f + geo.dim;
    let mut gaps = vec![(a0 + 1.0).abs(), k.abs(), (a0 + q * k + 1.0).abs()];
    if geo.rate > 0.0 {
        let (ua, fa) = (geo.tail(alpha).0, geo.tail(gamma_f).0);
        gaps.extend([ua.abs(), fa.abs(), (ua + q * fa).abs()]);
    }
    gaps.into_iter().fold(f64::INFINITY, f64::min)
}
