use num_complex::Complex;

use super::rational::RationalFunction;
use crate::error::{Error, Result};
use crate::scalar::{from_usize, real, Real};

/// Largest expansion order.
pub const MAX_ORDER: usize = 4096;

/// Truncated Taylor series `Σ_{n<N} c_n zⁿ` with a geometric decay estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries<T> {
    coeffs: Vec<Complex<T>>,
    /// `ρ` such that `|c_n| ≲ C·ρⁿ`.
    pub tail_ratio: T,
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("expansion order must be at least 1".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            requested: n,
            cap: MAX_ORDER,
        });
    }
    Ok(())
}

impl<T: Real> TaylorSeries<T> {
    pub fn new(coeffs: Vec<Complex<T>>, tail_ratio: T) -> Result<Self> {
        check_order(coeffs.len())?;
        Ok(Self { coeffs, tail_ratio })
    }

    /// Series with the decay ratio read off the last two coefficients.
    pub fn from_coeffs(coeffs: Vec<Complex<T>>) -> Result<Self> {
        check_order(coeffs.len())?;
        let mut s = Self {
            coeffs,
            tail_ratio: T::zero(),
        };
        s.tail_ratio = s.empirical_ratio();
        Ok(s)
    }

    /// `1 + 0z + …` of order `n`.
    pub fn one(n: usize) -> Result<Self> {
        check_order(n)?;
        let mut coeffs = vec![Complex::default(); n];
        coeffs[0] = real(T::one());
        Ok(Self {
            coeffs,
            tail_ratio: T::zero(),
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex<T> {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// `|c_{N−1}/c_{N−2}|`, or 0 when undefined.
    pub fn empirical_ratio(&self) -> T {
        let n = self.coeffs.len();
        if n < 2 {
            return T::zero();
        }
        let (a, b) = (self.coeffs[n - 1].norm(), self.coeffs[n - 2].norm());
        if b == T::zero() {
            T::zero()
        } else {
            a / b
        }
    }

    pub fn partial_sum(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::default(), |acc, &c| acc * z + c)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
            tail_ratio: self.tail_ratio,
        }
    }

    /// Index of the last nonzero coefficient plus one.
    fn support(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.norm() != T::zero())
            .map_or(0, |k| k + 1)
    }
}

/// Taylor coefficients of `num/den` by the linear recurrence
/// `den₀cₙ = numₙ − Σ_{k=1..n} den_k c_{n−k}`.
pub fn expand_rational<T: Real>(f: &RationalFunction<T>, n: usize) -> Result<TaylorSeries<T>> {
    check_order(n)?;
    let den = f.den().coeffs();
    let d0 = den[0];
    if d0.norm() == T::zero() {
        return Err(Error::PoleAtOrigin);
    }
    let num = f.num();
    let mut c = vec![Complex::default(); n];
    for i in 0..n {
        let mut acc = num.coeff(i);
        for (k, &dk) in den.iter().enumerate().skip(1).take(i) {
            acc -= dk * c[i - k];
        }
        c[i] = acc / d0;
    }
    let tail_ratio = match f.den().degree() {
        Some(0) => T::zero(),
        _ => match f.poles() {
            Ok(poles) => poles
                .iter()
                .map(|p| T::one() / p.norm())
                .fold(T::zero(), T::max),
            Err(_) => TaylorSeries {
                coeffs: c.clone(),
                tail_ratio: T::zero(),
            }
            .empirical_ratio(),
        },
    };
    Ok(TaylorSeries { coeffs: c, tail_ratio })
}

/// Cauchy product truncated to the common order.
pub fn series_mul<T: Real>(f: &TaylorSeries<T>, g: &TaylorSeries<T>) -> Result<TaylorSeries<T>> {
    if f.order() != g.order() {
        return Err(Error::DimensionMismatch(format!(
            "series orders {} and {}",
            f.order(),
            g.order()
        )));
    }
    let n = f.order();
    let (sf, sg) = (f.support(), g.support());
    let mut out = vec![Complex::default(); n];
    for (i, &a) in f.coeffs.iter().enumerate().take(sf) {
        for (j, &b) in g.coeffs.iter().enumerate().take(sg.min(n - i)) {
            out[i + j] += a * b;
        }
    }
    Ok(TaylorSeries {
        coeffs: out,
        tail_ratio: f.tail_ratio.max(g.tail_ratio),
    })
}

/// `f^γ` on the principal branch at `c₀`, via
/// `n·c₀·wₙ = Σ_{k=1..n} (γk − (n−k)) c_k w_{n−k}`.
pub fn series_pow_real<T: Real>(f: &TaylorSeries<T>, gamma: T) -> Result<TaylorSeries<T>> {
    let c0 = f.coeffs[0];
    if c0.norm() == T::zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let n = f.order();
    let support = f.support();
    let mut w = vec![Complex::default(); n];
    w[0] = (c0.ln() * gamma).exp();
    for i in 1..n {
        let mut acc: Complex<T> = Complex::default();
        for k in 1..=i.min(support.saturating_sub(1)) {
            let weight = gamma * from_usize(k) - from_usize(i - k);
            acc += f.coeffs[k] * w[i - k] * weight;
        }
        w[i] = acc / (c0 * from_usize::<T>(i));
    }
    let mut out = TaylorSeries {
        coeffs: w,
        tail_ratio: f.tail_ratio,
    };
    if gamma.fract() != T::zero() || gamma < T::zero() {
        // zeros of f turn into branch points or poles
        out.tail_ratio = out.tail_ratio.max(out.empirical_ratio());
    }
    Ok(out)
}
