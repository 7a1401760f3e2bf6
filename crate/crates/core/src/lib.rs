//! Numerical toolkit for reverse Hardy inequalities with negative exponents
//! on radial metric measure spaces.
//!
//! The core is generic over the floating-point type through [`Real`]; the
//! `*F64` and `*F32` aliases at the crate root fix it.

// `!(x > 0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conditions;
pub mod error;
pub mod exponents;
pub mod inequality;
pub mod quadrature;
pub mod scalar;
pub mod spaces;

pub use conditions::{ConditionReport, Form, HardyProblem, Numerics, PredicateKind, PredicateOutcome};
pub use error::{HardyError, Result};
pub use exponents::{ExponentPair, SandwichConstants};
pub use inequality::{CheckOutcome, Family, Lhs, PanelGrid, RatioReport, SuiteReport, TestFunction};
pub use quadrature::{
    EndpointHints, ExtendedReal, InfimumResult, InfimumSearch, Integrator, QuadResult, QuadStatus, Radius, TailClass,
    Tolerance,
};
pub use scalar::Real;
pub use spaces::RadialSpace;

pub type ExponentPairF64 = ExponentPair<f64>;
pub type ExponentPairF32 = ExponentPair<f32>;
pub type RadialSpaceF64 = RadialSpace<f64>;
pub type RadialSpaceF32 = RadialSpace<f32>;
pub type ExtendedRealF64 = ExtendedReal<f64>;
pub type ExtendedRealF32 = ExtendedReal<f32>;
pub type HardyProblemF64 = HardyProblem<f64>;
pub type HardyProblemF32 = HardyProblem<f32>;
pub type ConditionReportF64 = ConditionReport<f64>;
pub type ConditionReportF32 = ConditionReport<f32>;
pub type TestFunctionF64 = TestFunction<f64>;
pub type TestFunctionF32 = TestFunction<f32>;
pub type RatioReportF64 = RatioReport<f64>;
pub type RatioReportF32 = RatioReport<f32>;
