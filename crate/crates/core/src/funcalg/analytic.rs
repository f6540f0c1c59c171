use num_complex::Complex;

use super::polynomial::{Polynomial, MAX_DEGREE};
use super::rational::{poly_zero_free, RationalFunction};
use super::series::{check_order, expand_rational, series_mul, series_pow_real, TaylorSeries};
use crate::error::{Error, Result};
use crate::moebius::{is_self_map, MoebiusMap};
use crate::scalar::{from_usize, lit, real, unimodular, Real};
use crate::tolerance::Tolerances;

/// `P^γ` with `P(0) > 0` and `P` zero-free on the closed disk; the branch is
/// the continuation of the real logarithm at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerFactor<T> {
    poly: Polynomial<T>,
    exponent: T,
    /// `Re P > 0` on the closed disk, so the principal logarithm is the continued one there.
    principal_safe: bool,
}

impl<T: Real> PowerFactor<T> {
    pub fn poly(&self) -> &Polynomial<T> {
        &self.poly
    }

    pub fn exponent(&self) -> T {
        self.exponent
    }

    fn new(poly: Polynomial<T>, exponent: T) -> Self {
        let principal_safe = right_half_plane(&poly);
        Self {
            poly,
            exponent,
            principal_safe,
        }
    }

    /// Continued `log P` at `z`, along the segment from the origin.
    fn log_at(&self, z: Complex<T>) -> Result<Complex<T>> {
        if self.principal_safe && z.norm() <= T::one() {
            return Ok(self.poly.eval(z).ln());
        }
        let (start, log_start) = if self.principal_safe {
            let s = z / z.norm();
            (s, self.poly.eval(s).ln())
        } else {
            (Complex::default(), real(self.poly.coeff(0).re.ln()))
        };
        continue_log(&self.poly, start, log_start, z)
    }
}

/// Sufficient test for `Re P > 0` on the closed disk: boundary samples with a
/// derivative margin (the minimum of a harmonic function is on the circle).
fn right_half_plane<T: Real>(p: &Polynomial<T>) -> bool {
    const SAMPLES: usize = 1024;
    let two_pi = T::PI() + T::PI();
    let h = two_pi / from_usize(SAMPLES);
    let lip: T = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm() * from_usize(k))
        .sum();
    let margin = lip * h / lit(2.0);
    (0..SAMPLES).all(|k| p.eval(unimodular(h * from_usize(k))).re > margin)
}

fn continue_log<T: Real>(p: &Polynomial<T>, from: Complex<T>, log_from: Complex<T>, to: Complex<T>) -> Result<Complex<T>> {
    let steps = 8usize.max(2 * p.degree().unwrap_or(0));
    let floor = p.l1_norm() * T::epsilon() * lit(64.0);
    let mut acc = log_from;
    let mut za = from;
    let mut va = p.eval(za);
    for k in 1..=steps {
        let zb = from + (to - from) * (from_usize::<T>(k) / from_usize(steps));
        let vb = p.eval(zb);
        acc += log_step(p, za, zb, va, vb, floor, 0)?;
        za = zb;
        va = vb;
    }
    Ok(acc)
}

fn log_step<T: Real>(
    p: &Polynomial<T>,
    za: Complex<T>,
    zb: Complex<T>,
    va: Complex<T>,
    vb: Complex<T>,
    floor: T,
    depth: usize,
) -> Result<Complex<T>> {
    if va.norm() <= floor || vb.norm() <= floor {
        return Err(Error::BranchViolation("continuation path passes through a zero".into()));
    }
    let ratio = vb / va;
    let smooth = (vb - va).norm() <= lit::<T>(0.5) * va.norm().min(vb.norm());
    if smooth && ratio.arg().abs() <= T::FRAC_PI_4() {
        return Ok(ratio.ln());
    }
    if depth >= 48 {
        return Err(Error::BranchViolation("continuation failed to resolve the argument".into()));
    }
    let zm = (za + zb) / lit::<T>(2.0);
    let vm = p.eval(zm);
    Ok(log_step(p, za, zm, va, vm, floor, depth + 1)? + log_step(p, zm, zb, vm, vb, floor, depth + 1)?)
}

/// `base · Π P_i^{γ_i}`: rational function times real powers of zero-free
/// polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticFunction<T> {
    base: RationalFunction<T>,
    factors: Vec<PowerFactor<T>>,
}

fn is_integer<T: Real>(x: T) -> bool {
    (x - x.round()).abs() <= lit(1e-12)
}

impl<T: Real> AnalyticFunction<T> {
    /// A rational function whose poles lie outside the closed disk.
    pub fn from_rational(r: RationalFunction<T>) -> Result<Self> {
        if r.den().degree().unwrap_or(0) > 0 && !poly_zero_free(r.den())? {
            return Err(Error::InvalidParameter("pole in the closed unit disk".into()));
        }
        Ok(Self {
            base: r,
            factors: Vec::new(),
        })
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self {
            base: RationalFunction::constant(c),
            factors: Vec::new(),
        }
    }

    pub fn polynomial(p: Polynomial<T>) -> Result<Self> {
        Self::from_rational(RationalFunction::polynomial(p)?)
    }

    /// `r^γ` on the principal branch at the origin; `r` must have no zeros or
    /// poles in the closed disk and `r(0) ∉ (−∞, 0]`.
    pub fn power(r: RationalFunction<T>, gamma: T) -> Result<Self> {
        for (p, what) in [(r.num(), "zero"), (r.den(), "pole")] {
            if p.is_zero() || !poly_zero_free(p)? {
                return Err(Error::BranchViolation(format!("factor has a {what} in the closed disk")));
            }
        }
        let r0 = r.eval(Complex::default())?;
        if r0.im == T::zero() && r0.re <= T::zero() {
            return Err(Error::BranchViolation("factor value at 0 lies on the branch cut".into()));
        }
        let log0 = r0.ln();
        let mut out = Self::constant(real(T::one()));
        out.push_factor(r.num().clone(), gamma, log0 * gamma + real(-gamma * r.num().coeff(0).norm().ln()));
        let den = r.den().clone();
        let d0 = den.coeff(0).norm().ln();
        out.push_factor(den, -gamma, real(gamma * d0));
        Ok(out)
    }

    /// `K_w(z) = (1 − w̄z)^{−γ}`.
    pub fn kernel(w: Complex<T>, gamma: T) -> Result<Self> {
        if w.norm() >= T::one() {
            return Err(Error::OutsideDisk {
                modulus: w.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        let r = RationalFunction::polynomial(Polynomial::new(vec![real(T::one()), -w.conj()]))?;
        Self::power(r, -gamma)
    }

    pub fn base(&self) -> &RationalFunction<T> {
        &self.base
    }

    pub fn factors(&self) -> &[PowerFactor<T>] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    /// Appends `exp(log_const) · (P/P(0)·|P(0)|)^γ`, merging equal factors and
    /// absorbing integer exponents into the rational part.
    fn push_factor(&mut self, poly: Polynomial<T>, gamma: T, log_const: Complex<T>) {
        self.base = self.base.scale(log_const.exp());
        let p0 = poly.coeff(0);
        let poly = poly.scale(real(p0.norm()) / p0);
        if poly.degree().unwrap_or(0) == 0 {
            let c = poly.coeff(0).re.powf(gamma);
            self.base = self.base.scale(real(c));
            return;
        }
        let mut gamma = gamma;
        if let Some(i) = self.factors.iter().position(|f| f.poly == poly) {
            gamma += self.factors.remove(i).exponent;
        }
        if gamma.abs() <= lit(1e-14) {
            return;
        }
        if is_integer(gamma) {
            let k = gamma.round().abs().to_usize().unwrap_or(usize::MAX);
            let deg = poly.degree().unwrap_or(0);
            if k.saturating_mul(deg) <= MAX_DEGREE {
                let pk = poly.powi(k);
                let (num, den) = if gamma > T::zero() {
                    (self.base.num().mul(&pk), self.base.den().clone())
                } else {
                    (self.base.num().clone(), self.base.den().mul(&pk))
                };
                self.base = RationalFunction::new(num, den).expect("nonzero denominator");
                return;
            }
        }
        self.factors.push(PowerFactor::new(poly, gamma));
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            base: self.base.scale(s),
            factors: self.factors.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self {
            base: self.base.mul(&other.base),
            factors: self.factors.clone(),
        };
        for f in &other.factors {
            out.push_factor(f.poly.clone(), f.exponent, Complex::default());
        }
        out
    }

    /// `1/f`; the rational part must not vanish in the closed disk.
    pub fn recip(&self) -> Result<Self> {
        if self.base.num().degree().unwrap_or(0) > 0 && !poly_zero_free(self.base.num())? {
            return Err(Error::InvalidParameter("reciprocal has a pole in the closed disk".into()));
        }
        let mut out = Self {
            base: self.base.recip()?,
            factors: Vec::new(),
        };
        for f in &self.factors {
            out.push_factor(f.poly.clone(), -f.exponent, Complex::default());
        }
        Ok(out)
    }

    /// `f ∘ φ` for a self-map `φ`. Rational parts compose exactly and each
    /// power factor splits into `P̃^γ (cz + d)^{−mγ}`, with the constant fixed so
    /// the result is the continuation of `f` along `φ([0, z])`.
    pub fn compose_with_moebius(&self, phi: &MoebiusMap<T>) -> Result<Self> {
        let check = is_self_map(phi, &Tolerances::default())?;
        if !check.is_self_map {
            return Err(Error::NotSelfMap(format!("sup modulus {}", check.sup)));
        }
        let co = phi.coefficients();
        let [_, _, c, d] = co;
        let phi0 = phi.eval(Complex::default()).ok_or(Error::PoleEncountered)?;
        let mut out = Self {
            base: self.base.compose_moebius(phi),
            factors: Vec::new(),
        };
        let bottom = Polynomial::new(vec![d, c]);
        for f in &self.factors {
            let m = f.poly.degree().unwrap_or(0);
            let tilde = f.poly.homogenize_moebius(co, m);
            if !poly_zero_free(&tilde)? {
                return Err(Error::BranchViolation("composed factor vanishes in the closed disk".into()));
            }
            let l = f.log_at(phi0)?;
            let k = l - real(tilde.coeff(0).norm().ln()) + real(from_usize::<T>(m) * d.norm().ln());
            out.push_factor(tilde, f.exponent, k * f.exponent);
            out.push_factor(bottom.clone(), -from_usize::<T>(m) * f.exponent, Complex::default());
        }
        Ok(out)
    }

    /// Value at `z` in the closed disk.
    pub fn evaluate(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.norm() > T::one() + lit(1e-12) {
            return Err(Error::OutsideDisk {
                modulus: z.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        self.evaluate_continued(z)
    }

    /// Analytic continuation along the ray from the origin; valid inside the
    /// disk of convergence of the Taylor series.
    pub fn evaluate_continued(&self, z: Complex<T>) -> Result<Complex<T>> {
        let mut v = self.base.eval(z)?;
        for f in &self.factors {
            v *= (f.log_at(z)? * f.exponent).exp();
        }
        Ok(v)
    }

    /// Poles of the rational part and zeros of the power factors.
    pub fn singularities(&self) -> Result<Vec<Complex<T>>> {
        let mut out = Vec::new();
        if self.base.den().degree().unwrap_or(0) > 0 {
            out.extend(self.base.poles()?);
        }
        for f in &self.factors {
            out.extend(f.poly.roots()?);
        }
        Ok(out)
    }

    /// `max 1/|s|` over singularities, 0 for polynomials.
    pub fn singularity_ratio(&self) -> Result<T> {
        Ok(self
            .singularities()?
            .iter()
            .map(|s| T::one() / s.norm())
            .fold(T::zero(), T::max))
    }

    /// Truncated Taylor series of order `n`.
    pub fn expand(&self, n: usize) -> Result<TaylorSeries<T>> {
        check_order(n)?;
        let mut s = expand_rational(&self.base, n)?;
        for f in &self.factors {
            let mut c: Vec<Complex<T>> = f.poly.coeffs().iter().copied().take(n).collect();
            c.resize(n, Complex::default());
            let ps = TaylorSeries::new(c, T::zero())?;
            s = series_mul(&s, &series_pow_real(&ps, f.exponent)?)?;
        }
        s.tail_ratio = match self.singularity_ratio() {
            Ok(r) => r,
            Err(_) => s.empirical_ratio(),
        };
        Ok(s)
    }

    /// The common value when `f` is numerically constant on the disk.
    pub fn approx_constant(&self, tol: T) -> Option<Complex<T>> {
        let v0 = self.evaluate(Complex::default()).ok()?;
        let two_pi = T::PI() + T::PI();
        for r in [lit::<T>(0.5), lit(0.9), T::one()] {
            for k in 0..12 {
                let z = unimodular(two_pi * from_usize(k) / lit(12.0)) * r;
                let v = self.evaluate(z).ok()?;
                if (v - v0).norm() > tol * (T::one() + v0.norm()) {
                    return None;
                }
            }
        }
        Some(v0)
    }
}
