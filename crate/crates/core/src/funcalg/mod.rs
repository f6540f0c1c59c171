//! Rational functions, real powers of zero-free factors, and truncated Taylor
//! expansions of both.

mod analytic;
mod polynomial;
mod rational;
mod series;

pub use analytic::{AnalyticFunction, PowerFactor};
pub use polynomial::{Polynomial, MAX_DEGREE};
pub use rational::{no_zero_in_closed_disk, RationalFunction, ZERO_TEST_RADIUS, ZERO_TEST_SAMPLES};
pub use series::{expand_rational, series_mul, series_pow_real, TaylorSeries, MAX_ORDER};

/// Truncated Taylor series of an analytic function.
pub fn expand_analytic<T: crate::scalar::Real>(
    f: &AnalyticFunction<T>,
    n: usize,
) -> crate::error::Result<TaylorSeries<T>> {
    f.expand(n)
}
