//! Exact arithmetic: rationals, cyclotomic fields, q-series and formal series.

pub mod cyclotomic;
pub mod formal;
pub mod json;
pub mod linalg;
pub mod qseries;

use thiserror::Error;

pub use cyclotomic::{CycElem, CycField};
pub use formal::FormalSeries;
pub use qseries::{QSeries, SeriesVerdict};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("level {from} does not divide level {to}")]
    IncompatibleLevels { from: u32, to: u32 },
    #[error("series is not a unit (leading coefficient unknown or zero)")]
    NotAUnit,
    #[error("logarithm needs constant term 1")]
    LogOfNonUnit,
    #[error("exponential needs constant term 0")]
    ExpOfNonZeroConstant,
    #[error("malformed value: {0}")]
    Parse(String),
}

/// `cyc_make`: reduce a rational polynomial in ζ_L modulo Φ_L.
pub fn cyc_make(level: u32, poly: &[Rational]) -> CycElem {
    CycElem::from_poly(level, poly)
}

/// `cyc_inv`
pub fn cyc_inv(x: &CycElem) -> Result<CycElem, ArithError> {
    x.inv()
}

/// `cyc_embed`
pub fn cyc_embed(x: &CycElem, target: u32) -> Result<CycElem, ArithError> {
    x.embed(target)
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
