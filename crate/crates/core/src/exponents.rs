//! Parameter algebra for the exponent pair `(p, q)` with `p ∈ (0,1)`, `q < 0`.
//!
//! The conjugate exponent `p' = p/(p-1)` is negative. The sharp-constant
//! bracket uses
//!
//! ```text
//! k(a) = (-a p')^(-1/q) (1 + a p')^(-1/p'),   a ∈ (0, -1/p')
//! ```
//!
//! which vanishes at both ends of its interval and peaks at `a* = -1/(p'+q)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::{lit, Real};

/// `p' = p/(p-1)` for `p ∈ (0,1)`.
pub fn conjugate_exponent<T: Real>(p: T) -> Result<T> {
    if !(p > T::zero() && p < T::one()) {
        return domain(format!("p must lie in (0,1), got {p}"));
    }
    Ok(p / (p - T::one()))
}

/// Exponent pair with its (negative) conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair<T> {
    p: T,
    q: T,
    p_conj: T,
}

impl<T: Real> ExponentPair<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        let p_conj = conjugate_exponent(p)?;
        if !(q < T::zero()) || !q.is_finite() {
            return domain(format!("q must be a finite negative number, got {q}"));
        }
        Ok(Self { p, q, p_conj })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }

    /// The conjugate exponent `p'`.
    pub fn p_conj(&self) -> T {
        self.p_conj
    }

    /// Right end `-1/p'` of the interval on which `k` is defined.
    pub fn alpha_upper(&self) -> T {
        -self.p_conj.recip()
    }
}

/// Maximiser and maximum of `k`, together with its domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichConstants<T> {
    pub alpha_star: T,
    pub k_sup: T,
    /// Open interval `(0, -1/p')`.
    pub admissible_interval: (T, T),
}

/// Evaluates `k(alpha)`; endpoint values are the continuous extension `0`.
pub fn k_alpha<T: Real>(pair: &ExponentPair<T>, alpha: T) -> Result<T> {
    let upper = pair.alpha_upper();
    if !(alpha >= T::zero() && alpha <= upper) {
        return domain(format!("alpha must lie in [0, {upper}], got {alpha}"));
    }
    let pc = pair.p_conj();
    let first = -alpha * pc;
    let second = T::one() + alpha * pc;
    if first <= T::zero() || second <= T::zero() {
        return Ok(T::zero());
    }
    // log-space: -1/q and -1/p' can both be huge
    let ln_k = -first.ln() / pair.q() - second.ln() / pc;
    Ok(ln_k.exp())
}

/// The maximiser `-1/(p'+q)` of `k` and the maximum value.
pub fn optimal_alpha<T: Real>(pair: &ExponentPair<T>) -> SandwichConstants<T> {
    let alpha_star = -(pair.p_conj() + pair.q()).recip();
    let k_sup = k_alpha(pair, alpha_star).expect("alpha_star lies inside (0, -1/p')");
    SandwichConstants { alpha_star, k_sup, admissible_interval: (T::zero(), pair.alpha_upper()) }
}

/// Closed form `(p'/(p'+q))^(-1/q) (q/(p'+q))^(-1/p')` of the maximum of `k`.
pub fn k_sup_closed_form<T: Real>(pair: &ExponentPair<T>) -> T {
    let (pc, q) = (pair.p_conj(), pair.q());
    let s = pc + q;
    (-(pc / s).ln() / q - (q / s).ln() / pc).exp()
}

/// Bracket `(k_sup·d, d)` for the best constant given a condition constant `d`.
pub fn sandwich<T: Real>(pair: &ExponentPair<T>, d: T) -> Result<(T, T)> {
    if !(d > T::zero()) || !d.is_finite() {
        return domain(format!("condition constant must be finite and positive, got {d}"));
    }
    let k = optimal_alpha(pair).k_sup;
    Ok((k * d, d))
}

/// Largest `k_alpha` over `points` equally spaced interior nodes of `(0, -1/p')`.
///
/// Brute-force cross-check for [`optimal_alpha`].
pub fn grid_argmax_k<T: Real>(pair: &ExponentPair<T>, points: usize) -> (T, T) {
    let upper = pair.alpha_upper();
    let step = upper / lit::<T>((points + 1) as f64);
    (1..=points)
        .map(|i| {
            let a = step * lit::<T>(i as f64);
            (a, k_alpha(pair, a).unwrap_or(T::zero()))
        })
        .fold((T::zero(), T::neg_infinity()), |best, cur| if cur.1 > best.1 { cur } else { best })
}
