//! Radial reduction of the supported geometries.
//!
//! Every geometry admits a polar decomposition around its base point, so an
//! integral of a radial function collapses to one dimension:
//! `∫_X h(|x|) dx = ∫_0^∞ h(r) s(r) dr`. A space is described here by its
//! sphere measure, its radial density `s(r)`, and the gauge `g(r)` that
//! radial power weights are built from (`u = g^α`, `v = g^β`).
//!
//! | kind                 | `s(r)`                        | `g(r)`       |
//! |----------------------|-------------------------------|--------------|
//! | homogeneous `(Q, S)` | `S r^(Q-1)`                   | `r`          |
//! | euclidean `n`        | `σ_n r^(n-1)`                 | `r`          |
//! | hyperbolic `n`       | `σ_n sinh(r)^(n-1)`           | `sinh r`     |
//! | cartan `(n, b)`      | `σ_n (sinh(√b r)/√b)^(n-1)`   | `sinh(√b r)` |
//!
//! with `σ_n = 2π^(n/2)/Γ(n/2)`; `cartan` with `b = 0` is flat.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, HardyError, Result};
use crate::quadrature::{ExtendedReal, Radius, TailClass};
use crate::scalar::{lit, ln_sinh, ln_sub_exp, Real};

/// A geometry with polar decomposition, reduced to its radial data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadialSpace<T> {
    /// Homogeneous group of homogeneous dimension `q_dim` with quasi-sphere measure `sphere`.
    Homogeneous {
        q_dim: T,
        sphere: T,
    },
    Euclidean {
        n: u32,
    },
    Hyperbolic {
        n: u32,
    },
    /// Constant curvature `-b`, `b >= 0`.
    CartanHadamard {
        n: u32,
        b: T,
    },
}

/// Growth model `C r^power e^(rate r)` of a radial function as `r → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth<T> {
    pub rate: T,
    pub power: T,
}

impl<T: Real> Growth<T> {
    pub fn constant() -> Self {
        Self { rate: T::zero(), power: T::zero() }
    }

    pub fn tail_class(&self) -> TailClass<T> {
        if self.rate > T::zero() {
            TailClass::ExpGrowth
        } else if self.rate < T::zero() {
            TailClass::ExpDecay
        } else {
            TailClass::Power(self.power)
        }
    }
}

/// Area of the unit sphere `S^(n-1)` in `R^n`, `2π^(n/2)/Γ(n/2)`.
pub fn unit_sphere_area<T: Real>(n: u32) -> T {
    // Γ(n/2) by the half-integer recursion
    let mut gamma = if n.is_multiple_of(2) { T::one() } else { T::PI().sqrt() };
    let mut k = if n.is_multiple_of(2) { 1.0 } else { 0.5 };
    while k < n as f64 / 2.0 {
        gamma = gamma * lit(k);
        k += 1.0;
    }
    lit::<T>(2.0) * T::PI().powf(lit::<T>(n as f64 / 2.0)) / gamma
}

impl<T: Real> RadialSpace<T> {
    pub fn homogeneous(q_dim: T, sphere: T) -> Result<Self> {
        Self::Homogeneous { q_dim, sphere }.validated()
    }

    pub fn euclidean(n: u32) -> Result<Self> {
        Self::Euclidean { n }.validated()
    }

    pub fn hyperbolic(n: u32) -> Result<Self> {
        Self::Hyperbolic { n }.validated()
    }

    pub fn cartan_hadamard(n: u32, b: T) -> Result<Self> {
        Self::CartanHadamard { n, b }.validated()
    }

    /// Checks the parameter ranges of the kind.
    pub fn validated(self) -> Result<Self> {
        match self {
            Self::Homogeneous { q_dim, sphere } => {
                if !(q_dim > T::zero() && q_dim.is_finite()) {
                    return domain(format!("homogeneous dimension must be positive, got {q_dim}"));
                }
                if !(sphere > T::zero() && sphere.is_finite()) {
                    return domain(format!("quasi-sphere measure must be positive, got {sphere}"));
                }
            }
            Self::Euclidean { n } => {
                if n < 1 {
                    return domain("euclidean dimension must be at least 1");
                }
            }
            Self::Hyperbolic { n } => {
                if n < 2 {
                    return domain("hyperbolic dimension must be at least 2");
                }
            }
            Self::CartanHadamard { n, b } => {
                if n < 2 {
                    return domain("Cartan-Hadamard dimension must be at least 2");
                }
                if !(b >= T::zero() && b.is_finite()) {
                    return domain(format!("b = -K_M must be finite and nonnegative, got {b}"));
                }
            }
        }
        Ok(self)
    }

    /// Homogeneous dimension `Q`, or the manifold dimension `n`.
    pub fn dimension(&self) -> T {
        match *self {
            Self::Homogeneous { q_dim, .. } => q_dim,
            Self::Euclidean { n } | Self::Hyperbolic { n } | Self::CartanHadamard { n, .. } => lit(n as f64),
        }
    }

    /// `√b` for the curved kinds, `None` when the radial data are pure powers.
    pub fn curvature_scale(&self) -> Option<T> {
        match *self {
            Self::Hyperbolic { .. } => Some(T::one()),
            Self::CartanHadamard { b, .. } if b > T::zero() => Some(b.sqrt()),
            _ => None,
        }
    }

    /// True when `s` and the gauge are pure powers of `r`.
    pub fn is_power_type(&self) -> bool {
        self.curvature_scale().is_none()
    }

    pub fn sphere_measure(&self) -> T {
        match *self {
            Self::Homogeneous { sphere, .. } => sphere,
            Self::Euclidean { n } | Self::Hyperbolic { n } | Self::CartanHadamard { n, .. } => unit_sphere_area(n),
        }
    }

    /// `ln g(r)`.
    pub fn ln_gauge(&self, r: Radius<T>) -> T {
        match self.curvature_scale() {
            None => r.ln(),
            Some(c) => {
                let x = c * r.value();
                if x < lit(1e-3) {
                    // r may have underflowed; keep the exact ln r
                    let x2 = x * x;
                    c.ln() + r.ln() + (x2 / lit(6.0) + x2 * x2 / lit(120.0)).ln_1p()
                } else if x.is_finite() {
                    ln_sinh(x)
                } else {
                    // r overflowed: ln sinh(c r) ≈ c r
                    (c.ln() + r.ln()).exp()
                }
            }
        }
    }

    /// `ln s(r)`.
    pub fn ln_radial_density(&self, r: Radius<T>) -> T {
        self.ln_shell(T::zero(), r)
    }

    /// `ln(s(r) g(r)^exponent)`, the shell mass of the weight `g^exponent`.
    pub fn ln_shell(&self, exponent: T, r: Radius<T>) -> T {
        let base = self.sphere_measure().ln();
        let dim_m1 = self.dimension() - T::one();
        // combine powers first so that 0·∞ never appears far out
        let m = dim_m1 + exponent;
        match self.curvature_scale() {
            None if m == T::zero() => base,
            None => base + m * r.ln(),
            Some(c) => {
                let shift = base - dim_m1 * c.ln();
                if m == T::zero() {
                    shift
                } else {
                    shift + m * self.ln_gauge(r)
                }
            }
        }
    }

    pub fn radial_density(&self, r: T) -> Result<T> {
        check_radius(r)?;
        Ok(self.ln_radial_density(Radius::new(r)).exp())
    }

    /// `g(r)^exponent`.
    pub fn weight_radial(&self, exponent: T, r: T) -> Result<T> {
        check_radius(r)?;
        if exponent == T::zero() {
            return Ok(T::one());
        }
        Ok((exponent * self.ln_gauge(Radius::new(r))).exp())
    }

    /// `s(r) g(r)^exponent`: the radial density of the weighted measure.
    pub fn weighted_shell_density(&self, exponent: T, r: T) -> Result<T> {
        check_radius(r)?;
        Ok(self.ln_shell(exponent, Radius::new(r)).exp())
    }

    /// Exponent `e` with `s(r) g(r)^exponent ~ C r^e` as `r → 0`.
    pub fn shell_power_at_zero(&self, exponent: T) -> T {
        self.dimension() - T::one() + exponent
    }

    /// Growth of `s(r) g(r)^exponent` as `r → ∞`.
    pub fn shell_growth_at_infinity(&self, exponent: T) -> Growth<T> {
        let m = self.dimension() - T::one() + exponent;
        match self.curvature_scale() {
            None => Growth { rate: T::zero(), power: m },
            Some(c) => Growth { rate: c * m, power: T::zero() },
        }
    }

    /// Radius beyond which `sinh(√b r) = e^(√b r)/2` to working precision.
    pub fn far_radius(&self) -> Option<T> {
        self.curvature_scale().map(|c| lit::<T>(20.0) / c)
    }

    /// `∫_lo^hi s(r) g(r)^exponent dr` for `lo >= far_radius`, where the shell
    /// is an exact exponential `e^(A + λ r)`.
    ///
    /// Returns `None` on power-type spaces or when `lo` is too small.
    pub fn shell_integral_far(&self, exponent: T, lo: T, hi: T) -> Option<ExtendedReal<T>> {
        let c = self.curvature_scale()?;
        if !(lo >= self.far_radius()? && hi > lo) {
            return None;
        }
        let dim_m1 = self.dimension() - T::one();
        let ln2 = lit::<T>(2.0).ln();
        let m = dim_m1 + exponent;
        let a = self.sphere_measure().ln() - dim_m1 * c.ln() - m * ln2;
        let lambda = c * m;
        let ln = if lambda == T::zero() {
            a + (hi - lo).ln()
        } else if lambda < T::zero() {
            let width = if hi == T::infinity() { T::zero() } else { (-(lambda * (hi - lo)).exp_m1()).ln() };
            a + lambda * lo + width - (-lambda).ln()
        } else if hi == T::infinity() {
            T::infinity()
        } else {
            a + lambda * hi + (-(-lambda * (hi - lo)).exp_m1()).ln() - lambda.ln()
        };
        Some(ExtendedReal::from_ln(ln))
    }

    /// `∫_lo^hi s(r) g(r)^exponent dr` by antiderivative, when one is known.
    ///
    /// Pure powers are always available; curved kinds only when the total
    /// sinh power `n - 1 + exponent` is one of `-1, 0, 1, 2`.
    pub fn shell_integral_closed_form(&self, exponent: T, lo: T, hi: T) -> Option<ExtendedReal<T>> {
        if !(lo >= T::zero() && hi > lo) {
            return None;
        }
        let ln_sphere = self.sphere_measure().ln();
        match self.curvature_scale() {
            None => {
                let k1 = self.dimension() + exponent; // power + 1
                Some(ExtendedReal::from_ln(ln_sphere + ln_power_integral(k1, lo, hi)))
            }
            Some(c) => {
                let m = self.dimension() - T::one() + exponent;
                let m_int = m.round();
                if (m - m_int).abs() > lit(1e-12) {
                    return None;
                }
                let ln_sinh_int = ln_sinh_power_integral(m_int.to_i32()?, c * lo, c * hi)?;
                // s g^e = σ c^{-(n-1)} sinh(c r)^m and dr = dx / c
                let ln_scale = ln_sphere - (self.dimension() - T::one()) * c.ln() - c.ln();
                Some(ExtendedReal::from_ln(ln_scale + ln_sinh_int))
            }
        }
    }
}

fn check_radius<T: Real>(r: T) -> Result<()> {
    if !(r > T::zero()) || !r.is_finite() {
        return domain(format!("radius must be positive and finite, got {r}"));
    }
    Ok(())
}

/// `ln ∫_lo^hi r^(k1-1) dr`.
fn ln_power_integral<T: Real>(k1: T, lo: T, hi: T) -> T {
    let inf = T::infinity();
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    if k1 == T::zero() {
        if lo == T::zero() || hi == inf {
            return inf;
        }
        return (ln_hi - ln_lo).ln();
    }
    if k1 > T::zero() {
        if hi == inf {
            return inf;
        }
        // (hi^k1 - lo^k1)/k1
        ln_sub_exp(k1 * ln_hi, k1 * ln_lo) - k1.ln()
    } else {
        if lo == T::zero() {
            return inf;
        }
        ln_sub_exp(k1 * ln_lo, k1 * ln_hi) - (-k1).ln()
    }
}

/// `ln ∫_a^b sinh(x)^m dx` for `m ∈ {-1, 0, 1, 2}`.
fn ln_sinh_power_integral<T: Real>(m: i32, a: T, b: T) -> Option<T> {
    let inf = T::infinity();
    let v = match m {
        0 => {
            if b == inf {
                inf
            } else {
                (b - a).ln()
            }
        }
        1 => {
            if b == inf {
                inf
            } else {
                // cosh b - cosh a = 2 sinh((b+a)/2) sinh((b-a)/2)
                let half = lit::<T>(0.5);
                T::LN_2() + ln_sinh((b + a) * half) + ln_sinh((b - a) * half)
            }
        }
        2 => {
            if b == inf {
                inf
            } else {
                ln_sub_exp(ln_sinh_sq_antideriv(b), ln_sinh_sq_antideriv(a))
            }
        }
        -1 => {
            if a == T::zero() {
                inf
            } else {
                ln_sub_exp(ln_ln_coth_half(a), ln_ln_coth_half(b))
            }
        }
        _ => return None,
    };
    Some(v)
}

/// `ln F(x)` with `F(x) = (sinh 2x - 2x)/4 = ∫_0^x sinh².`
fn ln_sinh_sq_antideriv<T: Real>(x: T) -> T {
    if x == T::zero() {
        return T::neg_infinity();
    }
    if x < lit(0.1) {
        // (sinh y - y)/4 with y = 2x, by series
        let y = x + x;
        let y2 = y * y;
        let mut term = y * y2 / lit(6.0);
        let mut sum = term;
        for k in 1..12 {
            let k = lit::<T>(k as f64);
            term = term * y2 / ((k + k + lit(2.0)) * (k + k + lit(3.0)));
            sum = sum + term;
        }
        (sum / lit(4.0)).ln()
    } else if x < lit(20.0) {
        (((x + x).sinh() - x - x) / lit(4.0)).ln()
    } else {
        let e = (-(x + x)).exp();
        x + x - lit::<T>(8.0).ln() + (-(e * e) - lit::<T>(4.0) * x * e).ln_1p()
    }
}

/// `ln(ln coth(x/2))`; `ln coth(x/2) = ∫_x^∞ dy / sinh y`.
fn ln_ln_coth_half<T: Real>(x: T) -> T {
    if x == T::infinity() {
        return T::neg_infinity();
    }
    if x > lit(30.0) {
        // ln coth(x/2) = 2e^{-x} + O(e^{-3x})
        T::LN_2() - x
    } else {
        (lit::<T>(2.0) / x.exp_m1()).ln_1p().ln()
    }
}

impl<T: Real> fmt::Display for RadialSpace<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Homogeneous { q_dim, sphere } => write!(f, "homogeneous:Q={q_dim},S={sphere}"),
            Self::Euclidean { n } => write!(f, "euclidean:n={n}"),
            Self::Hyperbolic { n } => write!(f, "hyperbolic:n={n}"),
            Self::CartanHadamard { n, b } => write!(f, "cartan:n={n},b={b}"),
        }
    }
}

/// Parses `euclidean:n=2`, `homogeneous:Q=4,S=6.5`, `hyperbolic:n=3`, `cartan:n=3,b=2.0`.
impl<T: Real> FromStr for RadialSpace<T> {
    type Err = HardyError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| HardyError::Parse(format!("space `{s}`: {msg}"));
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("expected `<kind>:<key>=<value>,...`"))?;
        let mut params: Vec<(&str, &str)> = Vec::new();
        for item in rest.split(',').filter(|x| !x.trim().is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| bad(&format!("malformed parameter `{item}`")))?;
            params.push((k.trim(), v.trim()));
        }
        let get = |key: &str| -> Result<&str> {
            params
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| bad(&format!("missing parameter `{key}`")))
        };
        let allow = |keys: &[&str]| -> Result<()> {
            match params.iter().find(|(k, _)| !keys.contains(k)) {
                Some((k, _)) => Err(bad(&format!("unknown parameter `{k}`"))),
                None => Ok(()),
            }
        };
        let int = |key: &str| -> Result<u32> {
            get(key)?.parse::<u32>().map_err(|_| bad(&format!("`{key}` must be a positive integer")))
        };
        let real = |key: &str| -> Result<T> {
            let v: f64 = get(key)?.parse().map_err(|_| bad(&format!("`{key}` must be a number")))?;
            T::from_f64(v).ok_or_else(|| bad(&format!("`{key}` out of range")))
        };
        let space = match kind.trim() {
            "euclidean" => {
                allow(&["n"])?;
                Self::Euclidean { n: int("n")? }
            }
            "homogeneous" => {
                allow(&["Q", "S"])?;
                Self::Homogeneous { q_dim: real("Q")?, sphere: real("S")? }
            }
            "hyperbolic" => {
                allow(&["n"])?;
                Self::Hyperbolic { n: int("n")? }
            }
            "cartan" => {
                allow(&["n", "b"])?;
                Self::CartanHadamard { n: int("n")?, b: real("b")? }
            }
            other => return Err(bad(&format!("unknown kind `{other}`"))),
        };
        space.validated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn sphere_measure_examples() {
        let e2 = RadialSpace::<f64>::euclidean(2).unwrap();
        assert!(rel(e2.sphere_measure(), 2.0 * PI) < 1e-15);
        let e3 = RadialSpace::<f64>::euclidean(3).unwrap();
        assert!(rel(e3.sphere_measure(), 4.0 * PI) < 1e-15);
        let h = RadialSpace::homogeneous(4.0, 6.5).unwrap();
        assert_eq!(h.sphere_measure(), 6.5);
        // 2π², 8π²/3, π³
        assert!(rel(unit_sphere_area::<f64>(4), 2.0 * PI * PI) < 1e-15);
        assert!(rel(unit_sphere_area::<f64>(5), 8.0 * PI * PI / 3.0) < 1e-15);
        assert!(rel(unit_sphere_area::<f64>(6), PI.powi(3)) < 1e-15);
        assert!(rel(unit_sphere_area::<f64>(1), 2.0) < 1e-15);
    }

    #[test]
    fn radial_density_examples() {
        let e2 = RadialSpace::<f64>::euclidean(2).unwrap();
        assert!(rel(e2.radial_density(1.0).unwrap(), 2.0 * PI) < 1e-15);
        let h2 = RadialSpace::<f64>::hyperbolic(2).unwrap();
        assert!(rel(h2.radial_density(1.0).unwrap(), 2.0 * PI * 1f64.sinh()) < 1e-14);
        assert!((h2.radial_density(1.0).unwrap() - 7.384007).abs() < 1e-5);
        let c3 = RadialSpace::cartan_hadamard(3, 0.0).unwrap();
        assert!(rel(c3.radial_density(2.0).unwrap(), 16.0 * PI) < 1e-14);
        assert!(e2.radial_density(0.0).is_err());
        assert!(e2.radial_density(-1.0).is_err());
    }

    #[test]
    fn weight_examples() {
        let e2 = RadialSpace::<f64>::euclidean(2).unwrap();
        assert!(rel(e2.weight_radial(-6.0, 2.0).unwrap(), 0.015625) < 1e-15);
        let h2 = RadialSpace::<f64>::hyperbolic(2).unwrap();
        assert!((h2.weight_radial(1.0, 1.0).unwrap() - 1.1752012).abs() < 1e-7);
        assert_eq!(h2.weight_radial(0.0, 3.7).unwrap(), 1.0);
        assert!(e2.weight_radial(1.0, 0.0).is_err());

        assert!(rel(e2.weighted_shell_density(-6.0, 1.0).unwrap(), 2.0 * PI) < 1e-15);
        assert!(rel(e2.weighted_shell_density(-6.0, 2.0).unwrap(), PI / 16.0) < 1e-14);
        let v = h2.weighted_shell_density(-2.0, 1.0).unwrap();
        assert!(rel(v, 2.0 * PI / 1f64.sinh()) < 1e-14);
        // quoted to five digits
        assert!((v - 5.34650).abs() < 5e-5);
    }

    #[test]
    fn coincidences_between_kinds() {
        let radii = [1e-3, 1e-1, 1.0, 10.0, 100.0];
        for n in 2..=4u32 {
            let e = RadialSpace::<f64>::euclidean(n).unwrap();
            let h = RadialSpace::<f64>::hyperbolic(n).unwrap();
            let hom = RadialSpace::homogeneous(n as f64, unit_sphere_area::<f64>(n)).unwrap();
            let c0 = RadialSpace::cartan_hadamard(n, 0.0).unwrap();
            let c1 = RadialSpace::cartan_hadamard(n, 1.0).unwrap();
            let ctiny = RadialSpace::cartan_hadamard(n, 1e-12).unwrap();
            for &r in &radii {
                let de = e.radial_density(r).unwrap();
                assert!(rel(hom.radial_density(r).unwrap(), de) < 1e-10);
                assert!(rel(c0.radial_density(r).unwrap(), de) < 1e-10);
                assert!(rel(ctiny.radial_density(r).unwrap(), de) < 1e-4);
                assert!(rel(c1.radial_density(r).unwrap(), h.radial_density(r).unwrap()) < 1e-10);
            }
        }
    }

    #[test]
    fn densities_increase() {
        let spaces = [
            RadialSpace::<f64>::euclidean(2).unwrap(),
            RadialSpace::hyperbolic(3).unwrap(),
            RadialSpace::homogeneous(1.5, 3.0).unwrap(),
            RadialSpace::cartan_hadamard(4, 2.5).unwrap(),
        ];
        for s in spaces {
            let mut prev = 0.0;
            for i in 0..100 {
                let r = 10f64.powf(-3.0 + 5.0 * i as f64 / 99.0);
                let d = s.radial_density(r).unwrap();
                assert!(d > prev, "{s} at r={r}");
                prev = d;
            }
        }
    }

    #[test]
    fn hyperbolic_density_is_exponential_far_out() {
        for n in 2..=5u32 {
            let h = RadialSpace::<f64>::hyperbolic(n).unwrap();
            for &r in &[20.0, 35.0, 100.0, 500.0] {
                let ln_ratio = h.ln_radial_density(Radius::new(r))
                    - (unit_sphere_area::<f64>(n).ln() + (n - 1) as f64 * (r - std::f64::consts::LN_2));
                assert!(ln_ratio.abs() <= 1e-8, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn closed_form_shell_integrals() {
        let e2 = RadialSpace::<f64>::euclidean(2).unwrap();
        // 2π ∫_1^∞ r^-5 = π/2
        let v = e2.shell_integral_closed_form(-6.0, 1.0, f64::INFINITY).unwrap();
        assert!(rel(v.value(), PI / 2.0) < 1e-15);
        let v = e2.shell_integral_closed_form(0.0, 0.0, 1.0).unwrap();
        assert!(rel(v.value(), PI) < 1e-15);
        assert!(e2.shell_integral_closed_form(0.0, 1.0, f64::INFINITY).unwrap().is_infinite());
        assert!(e2.shell_integral_closed_form(-2.0, 0.0, 1.0).unwrap().is_infinite());
        let v = e2.shell_integral_closed_form(-2.0, 1.0, 3.0f64.exp()).unwrap();
        assert!(rel(v.value(), 2.0 * PI * 3.0) < 1e-14);

        let h2 = RadialSpace::<f64>::hyperbolic(2).unwrap();
        // 2π ln coth(1/2)
        let v = h2.shell_integral_closed_form(-2.0, 1.0, f64::INFINITY).unwrap();
        assert!(rel(v.value(), 2.0 * PI * (1.0 / 0.5f64.tanh()).ln()) < 1e-14);
        let v = h2.shell_integral_closed_form(-1.0, 0.0, 1.0).unwrap();
        assert!(rel(v.value(), 2.0 * PI) < 1e-14);
        let v = h2.shell_integral_closed_form(0.0, 0.0, 2.0).unwrap();
        assert!(rel(v.value(), 2.0 * PI * (2f64.cosh() - 1.0)) < 1e-14);
        let h3 = RadialSpace::<f64>::hyperbolic(3).unwrap();
        let v = h3.shell_integral_closed_form(0.0, 0.5, 1.5).unwrap();
        let f = |x: f64| ((2.0 * x).sinh() - 2.0 * x) / 4.0;
        assert!(rel(v.value(), 4.0 * PI * (f(1.5) - f(0.5))) < 1e-13);
        let v = h3.shell_integral_closed_form(0.0, 0.0, 0.01).unwrap();
        assert!(rel(v.value(), 4.0 * PI * f(0.01)) < 1e-9);
        assert!(h3.shell_integral_closed_form(0.5, 0.0, 1.0).is_none());
        // far tail stays representable in log form
        let v = h2.shell_integral_closed_form(-2.0, 1000.0, f64::INFINITY).unwrap();
        assert!((v.ln() - ((4.0 * PI).ln() - 1000.0)).abs() < 1e-12);
    }

    #[test]
    fn far_shell_integrals_match_antiderivatives() {
        let e2 = RadialSpace::<f64>::euclidean(2).unwrap();
        assert!(e2.far_radius().is_none());
        assert!(e2.shell_integral_far(0.0, 30.0, 40.0).is_none());
        let h2 = RadialSpace::<f64>::hyperbolic(2).unwrap();
        assert!(h2.shell_integral_far(0.0, 10.0, 40.0).is_none());
        let h3 = RadialSpace::<f64>::hyperbolic(3).unwrap();
        let c4 = RadialSpace::<f64>::cartan_hadamard(4, 4.0).unwrap();
        for (space, exponent) in [(h2, -2.0), (h2, -1.0), (h2, 0.0), (h3, -1.0), (h3, 0.0), (c4, -3.0), (c4, -2.0)] {
            let lo = space.far_radius().unwrap() + 0.5;
            for hi in [lo + 0.25, lo + 3.0, f64::INFINITY] {
                let exact = space.shell_integral_closed_form(exponent, lo, hi).unwrap();
                let far = space.shell_integral_far(exponent, lo, hi).unwrap();
                assert!(
                    (far.ln() - exact.ln()).abs() < 1e-13 || (far.is_infinite() && exact.is_infinite()),
                    "{space} e={exponent} ({lo}, {hi}): {far:?} vs {exact:?}"
                );
            }
        }
        // 2π ∫_t^∞ dr / sinh r = 2π ln coth(t/2) ≈ 4π e^-t
        let v = h2.shell_integral_far(-2.0, 1e10, f64::INFINITY).unwrap();
        assert!((v.ln() - ((4.0 * PI).ln() - 1e10)).abs() < 1e-3);
    }

    #[test]
    fn grammar_round_trip_and_errors() {
        for s in ["euclidean:n=2", "homogeneous:Q=4,S=6.5", "hyperbolic:n=3", "cartan:n=3,b=2"] {
            let space: RadialSpace<f64> = s.parse().unwrap();
            assert_eq!(space.to_string(), s);
            assert_eq!(space.to_string().parse::<RadialSpace<f64>>().unwrap(), space);
        }
        let c: RadialSpace<f64> = "cartan:n=3,b=2.0".parse().unwrap();
        assert_eq!(c, RadialSpace::CartanHadamard { n: 3, b: 2.0 });
        for bad in [
            "euclid:n=2",
            "euclidean",
            "euclidean:n=0",
            "euclidean:n=x",
            "hyperbolic:n=1",
            "cartan:n=2,b=-1",
            "homogeneous:Q=4",
            "homogeneous:Q=-1,S=1",
            "euclidean:n=2,b=1",
        ] {
            assert!(bad.parse::<RadialSpace<f64>>().is_err(), "{bad}");
        }
        assert!(matches!("hyperbolic:n=1".parse::<RadialSpace<f64>>(), Err(HardyError::Domain(_))));
        assert!(matches!("nope:n=1".parse::<RadialSpace<f64>>(), Err(HardyError::Parse(_))));
    }
}
