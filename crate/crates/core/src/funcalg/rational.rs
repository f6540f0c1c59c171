use num_complex::Complex;

use super::polynomial::{Polynomial, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::moebius::MoebiusMap;
use crate::scalar::{lit, real, Real};

/// Radius of the circle used by the argument-principle zero test.
pub const ZERO_TEST_RADIUS: f64 = 1.0 + 1e-6;
/// Boundary samples used by the zero test before adaptive refinement.
pub const ZERO_TEST_SAMPLES: usize = 8192;

#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Real> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParameter("denominator is identically zero".into()));
        }
        for p in [&num, &den] {
            if p.degree().unwrap_or(0) > MAX_DEGREE {
                return Err(Error::InvalidParameter(format!(
                    "degree {} exceeds the cap {MAX_DEGREE}",
                    p.degree().unwrap_or(0)
                )));
            }
        }
        Ok(Self { num, den })
    }

    pub fn polynomial(p: Polynomial<T>) -> Result<Self> {
        Self::new(p, Polynomial::one())
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self {
            num: Polynomial::constant(c),
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        let d = self.den.eval(z);
        if d.norm() <= T::epsilon() * self.den.l1_norm() * (T::one() + z.norm()) {
            return Err(Error::PoleEncountered);
        }
        Ok(self.num.eval(z) / d)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    /// Product without cancellation; degrees are not capped here.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::InvalidParameter("reciprocal of the zero function".into()));
        }
        Ok(Self {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    /// `self ∘ φ`, exact: both parts are homogenized against the same power of `cz + d`.
    pub fn compose_moebius(&self, phi: &MoebiusMap<T>) -> Self {
        let m = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        let co = phi.coefficients();
        Self {
            num: self.num.homogenize_moebius(co, m),
            den: self.den.homogenize_moebius(co, m),
        }
    }

    /// Moduli of the poles (roots of the denominator).
    pub fn poles(&self) -> Result<Vec<Complex<T>>> {
        self.den.roots()
    }
}

/// True iff the numerator has no roots of modulus at most `1 + 1e−6`, by
/// argument-principle winding count on that circle.
pub fn no_zero_in_closed_disk<T: Real>(r: &RationalFunction<T>) -> Result<bool> {
    if r.den.coeff(0).norm() == T::zero() {
        return Err(Error::PoleAtOrigin);
    }
    poly_zero_free(r.num())
}

pub(crate) fn poly_zero_free<T: Real>(p: &Polynomial<T>) -> Result<bool> {
    if p.is_zero() {
        return Ok(false);
    }
    if p.degree() == Some(0) {
        return Ok(true);
    }
    Ok(p.winding_count(lit(ZERO_TEST_RADIUS), ZERO_TEST_SAMPLES)? == 0)
}

impl<T: Real> From<Complex<T>> for RationalFunction<T> {
    fn from(c: Complex<T>) -> Self {
        Self::constant(c)
    }
}

impl<T: Real> RationalFunction<T> {
    /// Rational with real coefficient lists.
    pub fn from_real(num: &[f64], den: &[f64]) -> Result<Self> {
        Self::new(Polynomial::from_real(num), Polynomial::from_real(den))
    }

    pub fn one() -> Self {
        Self::constant(real(T::one()))
    }
}
