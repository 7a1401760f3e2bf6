//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar the library is generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Relative tolerance the quadrature engine aims for by default.
    fn default_rel_tol() -> Self;
    /// Absolute tolerance the quadrature engine aims for by default.
    fn default_abs_tol() -> Self;
}

impl Real for f64 {
    fn default_rel_tol() -> Self {
        1e-10
    }
    fn default_abs_tol() -> Self {
        1e-14
    }
}

impl Real for f32 {
    fn default_rel_tol() -> Self {
        2e-5
    }
    fn default_abs_tol() -> Self {
        1e-30
    }
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// `ln(sinh x)` for `x > 0`, accurate for tiny and huge arguments.
pub fn ln_sinh<T: Real>(x: T) -> T {
    if x > lit(20.0) {
        // sinh x = e^x (1 - e^{-2x}) / 2
        x - T::LN_2() + (-(x * lit(-2.0)).exp()).ln_1p()
    } else if x < lit(1e-3) {
        let x2 = x * x;
        x.ln() + (x2 / lit(6.0) + x2 * x2 / lit(120.0)).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// `ln(e^a + e^b)` without overflow.
pub fn ln_add_exp<T: Real>(a: T, b: T) -> T {
    if a == T::neg_infinity() {
        return b;
    }
    if b == T::neg_infinity() {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == T::infinity() {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Log-sum-exp over an iterator, summed in iteration order.
pub fn ln_sum_exp<T: Real, I: IntoIterator<Item = T>>(xs: I) -> T {
    let xs: Vec<T> = xs.into_iter().collect();
    let max = xs.iter().copied().fold(T::neg_infinity(), T::max);
    if max == T::neg_infinity() || max == T::infinity() {
        return max;
    }
    let sum = xs.iter().fold(T::zero(), |acc, &x| acc + (x - max).exp());
    max + sum.ln()
}

/// `ln(e^a - e^b)` for `a >= b`; `-inf` when they coincide.
pub fn ln_sub_exp<T: Real>(a: T, b: T) -> T {
    if b == T::neg_infinity() {
        return a;
    }
    a + (-(b - a).exp_m1()).ln()
}

/// Serde helpers for floats that may be infinite: `±∞` and NaN become the
/// strings `"inf"`, `"-inf"` and `"nan"`, since JSON has no such numbers.
pub mod serde_float {
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;
    use std::fmt;

    use super::Real;

    pub fn serialize<T: Real, S: Serializer>(v: &T, serializer: S) -> Result<S::Ok, S::Error> {
        let x = v.to_f64().unwrap_or(f64::NAN);
        if x.is_nan() {
            serializer.serialize_str("nan")
        } else if x == f64::INFINITY {
            serializer.serialize_str("inf")
        } else if x == f64::NEG_INFINITY {
            serializer.serialize_str("-inf")
        } else {
            serializer.serialize_f64(x)
        }
    }

    pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(deserializer: D) -> Result<T, D::Error> {
        struct FloatVisitor;

        impl Visitor<'_> for FloatVisitor {
            type Value = f64;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or one of \"inf\", \"-inf\", \"nan\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
                match v {
                    "inf" => Ok(f64::INFINITY),
                    "-inf" => Ok(f64::NEG_INFINITY),
                    "nan" => Ok(f64::NAN),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
                Ok(v)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
                Ok(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
                Ok(v as f64)
            }
        }

        let x = deserializer.deserialize_any(FloatVisitor)?;
        T::from_f64(x).ok_or_else(|| de::Error::custom("out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(serde::Serialize, serde::Deserialize)]
    struct Wrapped(#[serde(with = "serde_float")] f64);

    #[test]
    fn non_finite_floats_round_trip_as_strings() {
        for (x, text) in [(f64::INFINITY, "\"inf\""), (f64::NEG_INFINITY, "\"-inf\""), (-1.25, "-1.25")] {
            let json = serde_json::to_string(&Wrapped(x)).unwrap();
            assert_eq!(json, text);
            assert_eq!(serde_json::from_str::<Wrapped>(&json).unwrap().0, x);
        }
        let nan = serde_json::to_string(&Wrapped(f64::NAN)).unwrap();
        assert!(serde_json::from_str::<Wrapped>(&nan).unwrap().0.is_nan());
        assert_eq!(serde_json::from_str::<Wrapped>("3").unwrap().0, 3.0);
        assert!(serde_json::from_str::<Wrapped>("\"big\"").is_err());
    }

    #[test]
    fn ln_sinh_matches_direct_evaluation_in_the_middle_range() {
        for &x in &[1e-2, 0.5, 1.0, 5.0, 19.0, 21.0, 50.0] {
            let direct = f64::sinh(x).ln();
            assert!((ln_sinh(x) - direct).abs() < 1e-13 * direct.abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn ln_sinh_survives_extreme_arguments() {
        assert!((ln_sinh(1e-200_f64) - (-200.0 * std::f64::consts::LN_10)).abs() < 1e-12);
        let big = 1e6_f64;
        assert_eq!(ln_sinh(big), big - std::f64::consts::LN_2);
    }

    #[test]
    fn log_sum_exp_helpers() {
        let v = ln_sum_exp([0.0_f64.ln(), 1.0_f64.ln(), 3.0_f64.ln()]);
        assert!((v.exp() - 4.0).abs() < 1e-14);
        assert_eq!(ln_sum_exp(Vec::<f64>::new()), f64::NEG_INFINITY);
        assert!((ln_add_exp(2.0_f64.ln(), 5.0_f64.ln()).exp() - 7.0).abs() < 1e-14);
        assert!((ln_sub_exp(5.0_f64.ln(), 2.0_f64.ln()).exp() - 3.0).abs() < 1e-14);
        assert_eq!(ln_sub_exp(1.0_f64, 1.0), f64::NEG_INFINITY);
    }
}
