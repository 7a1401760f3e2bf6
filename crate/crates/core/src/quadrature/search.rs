//! Log-grid scan followed by golden-section refinement.

use rayon::prelude::*;

use super::ExtendedReal;
use crate::error::{domain, HardyError, Result};
use crate::scalar::{lit, Real};

/// Search configuration over `t ∈ [t_lo, t_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfimumSearch<T> {
    pub t_lo: T,
    pub t_hi: T,
    pub grid_points: usize,
    pub refine_iters: usize,
    /// Nodes whose value is within this relative distance of the minimum
    /// count as tied with it.
    pub tie_rel: T,
}

impl<T: Real> Default for InfimumSearch<T> {
    fn default() -> Self {
        Self {
            t_lo: lit(1e-6),
            t_hi: lit(1e6),
            grid_points: 241,
            refine_iters: 60,
            tie_rel: T::default_rel_tol() * lit(100.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfimumResult<T: Real> {
    pub t_star: T,
    pub value: ExtendedReal<T>,
    /// The grid minimum sits only on the first or last node.
    pub at_boundary: bool,
    /// Smallest value seen on the grid.
    pub grid_min: ExtendedReal<T>,
    /// Nodes where `phi` failed.
    pub failed_nodes: usize,
}

/// Approximate `inf phi` over `[t_lo, t_hi]`.
pub fn infimum_search<T, F>(
    phi: F,
    t_lo: T,
    t_hi: T,
    grid_points: usize,
    refine_iters: usize,
) -> Result<InfimumResult<T>>
where
    T: Real,
    F: Fn(T) -> Result<ExtendedReal<T>> + Sync,
{
    InfimumSearch { t_lo, t_hi, grid_points, refine_iters, ..InfimumSearch::default() }.run(phi)
}

impl<T: Real> InfimumSearch<T> {
    pub fn run<F>(&self, phi: F) -> Result<InfimumResult<T>>
    where
        F: Fn(T) -> Result<ExtendedReal<T>> + Sync,
    {
        let valid_range = self.t_lo > T::zero() && self.t_lo < self.t_hi && self.t_hi.is_finite();
        if !valid_range {
            return domain(format!("search range must satisfy 0 < t_lo < t_hi, got [{}, {}]", self.t_lo, self.t_hi));
        }
        if self.grid_points < 3 {
            return domain("grid_points must be at least 3");
        }
        let n = self.grid_points;
        let (a, b) = (self.t_lo.ln(), self.t_hi.ln());
        let step = (b - a) / lit::<T>((n - 1) as f64);
        let node = |i: usize| if i == n - 1 { b } else { a + step * lit::<T>(i as f64) };

        let evals: Vec<Result<T>> = (0..n).into_par_iter().map(|i| ln_of(&phi, node(i).exp())).collect();

        let failed = evals.iter().filter(|e| e.is_err()).count();
        if 2 * failed > n {
            let first = evals.into_iter().find_map(|e| e.err()).expect("some node failed");
            return Err(HardyError::NumericalFailure(format!(
                "objective failed at {failed} of {n} grid nodes; first failure: {first}"
            )));
        }
        let lns: Vec<Option<T>> = evals.into_iter().map(|e| e.ok()).collect();

        let (imin, ln_min) = lns
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (i, v)))
            .fold((usize::MAX, T::infinity()), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
        if imin == usize::MAX {
            // every valid node is +∞
            let i = lns.iter().position(|v| v.is_some()).expect("at least half the nodes are valid");
            let grid_min = ExtendedReal::infinity();
            return Ok(InfimumResult {
                t_star: node(i).exp(),
                value: grid_min,
                at_boundary: false,
                grid_min,
                failed_nodes: failed,
            });
        }

        let tied = |v: T| v == ln_min || (ln_min.is_finite() && v - ln_min <= self.tie_rel);
        let tied_nodes: Vec<usize> = (0..n).filter(|&i| lns[i].is_some_and(tied)).collect();
        let interior: Vec<usize> = tied_nodes.iter().copied().filter(|&i| i != 0 && i != n - 1).collect();
        let at_boundary = interior.is_empty();
        let centre = if at_boundary { imin } else { interior[interior.len() / 2] };
        let grid_min = ExtendedReal::from_ln(ln_min);

        let mut best_s = node(centre);
        let mut best_ln = lns[centre].expect("centre is a valid node");
        if ln_min.is_finite() && self.refine_iters > 0 {
            let lo = node(centre.saturating_sub(1));
            let hi = node((centre + 1).min(n - 1));
            let (s, v) = golden(|s| ln_of(&phi, s.exp()).unwrap_or(T::infinity()), lo, hi, self.refine_iters);
            if v < best_ln {
                best_s = s;
                best_ln = v;
            }
        }

        Ok(InfimumResult {
            t_star: best_s.exp(),
            value: ExtendedReal::from_ln(best_ln.min(ln_min)),
            at_boundary,
            grid_min,
            failed_nodes: failed,
        })
    }
}

fn ln_of<T: Real, F: Fn(T) -> Result<ExtendedReal<T>>>(phi: &F, t: T) -> Result<T> {
    let v = phi(t)?;
    if v.ln().is_nan() {
        return Err(HardyError::NumericalFailure(format!("objective is NaN at t = {t}")));
    }
    Ok(v.ln())
}

/// Golden-section minimisation of `f` on `[lo, hi]`; returns the best point seen.
fn golden<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, iters: usize) -> (T, T) {
    let inv_phi: T = (lit::<T>(5.0).sqrt() - T::one()) * lit(0.5);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
            if f1 < best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
            if f2 < best.1 {
                best = (x2, f2);
            }
        }
    }
    best
}
