//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar the library is generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum
        + Default
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("index representable in scalar type")
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn real<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// `e^{iθ}`.
#[inline]
pub fn unimodular<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Tolerance floor scaled to the scalar's precision: `max(base, factor·ε)`.
pub fn scaled_tol<T: Real>(base: f64, factor: f64) -> T {
    let base: T = lit(base);
    let floor = T::epsilon() * lit(factor);
    if base > floor {
        base
    } else {
        floor
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma<T: Real>(x: T) -> T {
    if x < lit(0.5) {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx)
        let pi = T::PI();
        return (pi / (pi * x).sin()).abs().ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc: T = lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += lit::<T>(c) / (x + from_usize(i));
    }
    let t = x + lit(LANCZOS_G + 0.5);
    lit::<T>(0.5) * (T::PI() + T::PI()).ln() + (x + lit(0.5)) * t.ln() - t + acc.ln()
}

/// `|a − b| ≤ tol`
#[cfg(test)]
pub(crate) fn near<T: Real>(a: Complex<T>, b: Complex<T>, tol: T) -> bool {
    (a - b).norm() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..30usize {
            // Γ(n+1) = n!
            fact *= n as f64;
            let got = ln_gamma((n + 1) as f64);
            assert!((got - fact.ln()).abs() < 1e-12 * fact.ln().max(1.0), "n={n}");
        }
    }

    #[test]
    fn ln_gamma_half_integer() {
        // Γ(1/2) = √π
        let got = ln_gamma(0.5f64);
        assert!((got - std::f64::consts::PI.sqrt().ln()).abs() < 1e-13);
        let got = ln_gamma(2.5f64);
        let want = (0.75 * std::f64::consts::PI.sqrt()).ln();
        assert!((got - want).abs() < 1e-13);
    }

    #[test]
    fn ln_gamma_f32() {
        let got = ln_gamma(5.0f32);
        assert!((got - 24.0f32.ln()).abs() < 1e-5);
    }

    #[test]
    fn scaled_tol_respects_precision() {
        let t64: f64 = scaled_tol(1e-12, 16.0);
        assert_eq!(t64, 1e-12);
        let t32: f32 = scaled_tol(1e-12, 16.0);
        assert!(t32 > 1e-6);
    }
}
