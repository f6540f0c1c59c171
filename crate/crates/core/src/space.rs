//! The Hardy space and the weighted Bergman spaces: weights, kernels, inner
//! products in the orthonormal monomial basis.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::funcalg::{AnalyticFunction, TaylorSeries};
use crate::scalar::{from_usize, ln_gamma, lit, real, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Hardy,
    Bergman,
}

/// `H²` (`γ = 1`) or `A²_α` (`γ = α + 2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceSpec<T> {
    kind: SpaceKind,
    alpha: T,
}

impl<T: Real> SpaceSpec<T> {
    pub fn hardy() -> Self {
        Self {
            kind: SpaceKind::Hardy,
            alpha: -T::one(),
        }
    }

    pub fn bergman(alpha: T) -> Result<Self> {
        if !(alpha > -T::one()) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("Bergman parameter must exceed -1, got {alpha}")));
        }
        Ok(Self {
            kind: SpaceKind::Bergman,
            alpha,
        })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    /// `α` for Bergman spaces.
    pub fn alpha(&self) -> Option<T> {
        match self.kind {
            SpaceKind::Hardy => None,
            SpaceKind::Bergman => Some(self.alpha),
        }
    }

    pub fn gamma(&self) -> T {
        match self.kind {
            SpaceKind::Hardy => T::one(),
            SpaceKind::Bergman => self.alpha + lit(2.0),
        }
    }

    /// `β(n) = ‖zⁿ‖`.
    pub fn beta(&self, n: usize) -> T {
        match self.kind {
            SpaceKind::Hardy => T::one(),
            SpaceKind::Bergman => {
                let a2 = self.alpha + lit(2.0);
                let nn: T = from_usize(n);
                (lit::<T>(0.5) * (ln_gamma(nn + T::one()) + ln_gamma(a2) - ln_gamma(nn + a2))).exp()
            }
        }
    }

    /// `β(0..n)` by the ratio recurrence `β(k+1)² = β(k)²(k+1)/(k+α+2)`.
    pub fn weights(&self, n: usize) -> WeightSequence<T> {
        let mut beta = Vec::with_capacity(n);
        let mut sq = T::one();
        for k in 0..n {
            beta.push(sq.sqrt());
            if self.kind == SpaceKind::Bergman {
                let kk: T = from_usize(k);
                sq = sq * (kk + T::one()) / (kk + self.alpha + lit(2.0));
            }
        }
        WeightSequence { beta }
    }

    fn check_point(w: Complex<T>) -> Result<()> {
        if w.norm() >= T::one() {
            return Err(Error::OutsideDisk {
                modulus: w.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// Orthonormal coefficients `w̄ⁿ/β(n)` of `K_w`, `n < N`.
    pub fn kernel(&self, w: Complex<T>, n: usize) -> Result<CoeffVector<T>> {
        Self::check_point(w)?;
        let weights = self.weights(n);
        let mut coeffs = Vec::with_capacity(n);
        let mut pw = real(T::one());
        for k in 0..n {
            coeffs.push(pw / weights.beta[k]);
            pw *= w.conj();
        }
        Ok(CoeffVector { coeffs, space: *self })
    }

    /// `(1 − |w|²)^{−γ/2}`.
    pub fn kernel_norm(&self, w: Complex<T>) -> Result<T> {
        Self::check_point(w)?;
        Ok((T::one() - w.norm_sqr()).powf(-self.gamma() / lit(2.0)))
    }

    /// `⟨K_a, K_b⟩ = K_a(b) = (1 − āb)^{−γ}`.
    pub fn kernel_inner(&self, a: Complex<T>, b: Complex<T>) -> Result<Complex<T>> {
        Self::check_point(a)?;
        Self::check_point(b)?;
        Ok((real(T::one()) - a.conj() * b).powf(-self.gamma()))
    }

    /// `K_w` as a function.
    pub fn kernel_function(&self, w: Complex<T>) -> Result<AnalyticFunction<T>> {
        AnalyticFunction::kernel(w, self.gamma())
    }
}

impl<T: Real> fmt::Display for SpaceSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceKind::Hardy => write!(f, "hardy"),
            SpaceKind::Bergman => write!(f, "bergman:{}", self.alpha),
        }
    }
}

/// `β(n) = ‖zⁿ‖` for `n < N`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<T> {
    pub beta: Vec<T>,
}

/// Coefficients in the orthonormal basis `e_n = zⁿ/β(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector<T> {
    pub coeffs: Vec<Complex<T>>,
    pub space: SpaceSpec<T>,
}

impl<T: Real> CoeffVector<T> {
    /// `e_k` of length `n`.
    pub fn basis(space: SpaceSpec<T>, n: usize, k: usize) -> Self {
        let mut coeffs = vec![Complex::default(); n];
        coeffs[k] = real(T::one());
        Self { coeffs, space }
    }

    /// Taylor coefficients `a_n` become `a_n β(n)`.
    pub fn from_taylor(series: &TaylorSeries<T>, space: SpaceSpec<T>) -> Self {
        let w = space.weights(series.order());
        Self {
            coeffs: series
                .coeffs()
                .iter()
                .zip(&w.beta)
                .map(|(&c, &b)| c * b)
                .collect(),
            space,
        }
    }

    pub fn to_taylor(&self) -> Vec<Complex<T>> {
        let w = self.space.weights(self.coeffs.len());
        self.coeffs.iter().zip(&w.beta).map(|(&c, &b)| c / b).collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()
    }
}

/// `Σ f_n conj(g_n)`.
pub fn inner_product<T: Real>(f: &CoeffVector<T>, g: &CoeffVector<T>) -> Result<Complex<T>> {
    if f.space != g.space || f.len() != g.len() {
        return Err(Error::SpaceMismatch);
    }
    Ok(f.coeffs
        .iter()
        .zip(&g.coeffs)
        .fold(Complex::default(), |acc, (&a, &b)| acc + a * b.conj()))
}
