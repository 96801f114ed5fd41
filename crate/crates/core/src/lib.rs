//! Extended modified Bessel function I_v(q;x), the extended beta and
//! hypergeometric family built on it, their Mellin and Laplace transforms,
//! and extended (multiplicative) fractional derivatives.
//!
//! Special functions work in `Complex<f64>`. Polynomial and partial-fraction
//! code is generic over the coefficient field, so the same algorithms run on
//! exact rationals.

pub mod error;
pub mod extbessel;
pub mod exthyp;
pub mod fracdiff;
pub mod numkernel;
pub mod transforms;

pub use error::{Error, Result};
pub use numkernel::C64;

/// Exact complex rationals, for partial fractions without rounding.
pub type ExactComplex = num_complex::Complex<num_rational::BigRational>;
/// Rational function with floating complex poles.
pub type RationalC64 = fracdiff::RationalFunction<C64>;
/// Rational function with exact complex-rational poles.
pub type RationalExact = fracdiff::RationalFunction<ExactComplex>;
