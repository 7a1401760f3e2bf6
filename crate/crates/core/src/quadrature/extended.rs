//! Nonnegative extended reals `[0, +∞]`, stored as natural logarithms.
//!
//! Zero is `ln = -∞` and infinity is `ln = +∞`, so the power table
//!
//! ```text
//! 0^e = +∞ (e < 0),  0^e = 0 (e > 0),  (+∞)^e = 0 (e < 0),  (+∞)^e = +∞ (e > 0)
//! ```
//!
//! falls out of `ln(x^e) = e·ln x`. The log form also keeps very large and
//! very small finite values (radial integrals out to `r = 10^6` on hyperbolic
//! space) representable.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{domain, Result};
use crate::scalar::{ln_add_exp, Real};

#[derive(Clone, Copy, PartialEq)]
pub struct ExtendedReal<T> {
    ln: T,
}

// named methods rather than operator traits: `div` is partial and `mul` fixes 0·∞ = 0
#[allow(clippy::should_implement_trait)]
impl<T: Real> ExtendedReal<T> {
    pub fn zero() -> Self {
        Self { ln: T::neg_infinity() }
    }

    pub fn one() -> Self {
        Self { ln: T::zero() }
    }

    pub fn infinity() -> Self {
        Self { ln: T::infinity() }
    }

    /// Wraps a nonnegative value (`+∞` allowed).
    pub fn new(value: T) -> Result<Self> {
        if value.is_nan() || value < T::zero() {
            return domain(format!("extended reals are nonnegative, got {value}"));
        }
        Ok(Self { ln: value.ln() })
    }

    /// Builds from a natural logarithm; `NaN` is rejected by debug assertion.
    pub fn from_ln(ln: T) -> Self {
        debug_assert!(!ln.is_nan(), "NaN logarithm");
        Self { ln }
    }

    pub fn ln(&self) -> T {
        self.ln
    }

    /// The value as a plain float; may under- or overflow for extreme logs.
    pub fn value(&self) -> T {
        self.ln.exp()
    }

    pub fn is_zero(&self) -> bool {
        self.ln == T::neg_infinity()
    }

    pub fn is_infinite(&self) -> bool {
        self.ln == T::infinity()
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    /// Finite and strictly positive.
    pub fn is_positive_finite(&self) -> bool {
        self.ln.is_finite()
    }

    /// `self^e`. For `e = 0` the result is `1`, including `0^0` and `∞^0`.
    pub fn powf(self, e: T) -> Self {
        if e == T::zero() {
            return Self::one();
        }
        Self { ln: self.ln * e }
    }

    /// Product with the measure-theoretic convention `0·∞ = 0`.
    pub fn mul(self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self { ln: self.ln + other.ln }
    }

    /// Quotient; `0/0` and `∞/∞` are undefined and return `None`.
    pub fn div(self, other: Self) -> Option<Self> {
        if (self.is_zero() && other.is_zero()) || (self.is_infinite() && other.is_infinite()) {
            return None;
        }
        Some(Self { ln: self.ln - other.ln })
    }

    pub fn add(self, other: Self) -> Self {
        Self { ln: ln_add_exp(self.ln, other.ln) }
    }

    /// Multiplication by a finite nonnegative scalar.
    pub fn scale(self, c: T) -> Self {
        self.mul(Self { ln: c.ln() })
    }

    /// `self / other - 1`, computed from the logarithms.
    pub fn relative_difference(self, other: Self) -> T {
        (self.ln - other.ln).exp_m1()
    }
}

impl<T: Real> PartialOrd for ExtendedReal<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.ln.partial_cmp(&other.ln)
    }
}

impl<T: Real> fmt::Debug for ExtendedReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "ExtendedReal(+inf)")
        } else {
            write!(f, "ExtendedReal({} = e^{})", self.value(), self.ln)
        }
    }
}

impl<T: Real> fmt::Display for ExtendedReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.value())
        }
    }
}

/// `+∞` serialises as the string `"inf"`, everything else as a number.
impl<T: Real> Serialize for ExtendedReal<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.value().to_f64().unwrap_or(f64::NAN))
        }
    }
}

impl<'de, T: Real> Deserialize<'de> for ExtendedReal<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ExtVisitor<T>(std::marker::PhantomData<T>);

        impl<T: Real> Visitor<'_> for ExtVisitor<T> {
            type Value = ExtendedReal<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative number or the string \"inf\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                match v {
                    "inf" => Ok(ExtendedReal::infinity()),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Self::Value, E> {
                let t = T::from_f64(v).ok_or_else(|| E::custom("out of range"))?;
                ExtendedReal::new(t).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                self.visit_f64(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                self.visit_f64(v as f64)
            }
        }

        deserializer.deserialize_any(ExtVisitor(std::marker::PhantomData))
    }
}
