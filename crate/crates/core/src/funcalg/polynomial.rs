use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, real, unimodular, Real};

/// Largest degree accepted from user input.
pub const MAX_DEGREE: usize = 64;

/// Dense polynomial, ascending coefficients, exact trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.norm() == T::zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| real(lit(x))).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(real(T::one()))
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::default(), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * from_usize::<T>(k))
                .collect(),
        )
    }

    /// `Σ |p_k|`, a bound for `|p|` on the closed disk.
    pub fn l1_norm(&self) -> T {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(real(-T::one())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex::default(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn powi(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `Σ p_k (az + b)^k (cz + d)^{m−k}`, so that `p(φ(z)) = result / (cz + d)^m`.
    pub fn homogenize_moebius(&self, coeffs: [Complex<T>; 4], m: usize) -> Self {
        let [a, b, c, d] = coeffs;
        let top = Self::new(vec![b, a]);
        let bottom = Self::new(vec![d, c]);
        let mut out = Self::zero();
        for (k, &p) in self.coeffs.iter().enumerate() {
            out = out.add(&top.powi(k).mul(&bottom.powi(m - k)).scale(p));
        }
        out
    }

    /// All complex roots with multiplicity.
    pub fn roots(&self) -> Result<Vec<Complex<T>>> {
        match self.degree() {
            None => Err(Error::InvalidParameter("roots of the zero polynomial".into())),
            Some(0) => Ok(Vec::new()),
            Some(1) => Ok(vec![-self.coeffs[0] / self.coeffs[1]]),
            Some(2) => {
                let (c, b, a) = (self.coeffs[0], self.coeffs[1], self.coeffs[2]);
                let disc = (b * b - a * c * lit::<T>(4.0)).sqrt();
                let q = if (b.conj() * disc).re >= T::zero() {
                    (b + disc) * lit::<T>(-0.5)
                } else {
                    (b - disc) * lit::<T>(-0.5)
                };
                if q.norm() == T::zero() {
                    return Ok(vec![Complex::default(); 2]);
                }
                Ok(vec![q / a, c / q])
            }
            Some(_) => aberth(self),
        }
    }

    /// Number of zeros inside `|z| < radius` by the argument principle, with
    /// adaptive refinement of the sampled boundary.
    pub fn winding_count(&self, radius: T, samples: usize) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::InvalidParameter("winding number of the zero polynomial".into()));
        }
        let dp = self.derivative();
        let two_pi = T::PI() + T::PI();
        let h = two_pi / from_usize(samples);
        let at = |t: T| self.eval(unimodular(t) * radius);
        let mut total = T::zero();
        let mut closest = T::infinity();
        for k in 0..samples {
            let t0 = h * from_usize(k);
            let z = unimodular(t0) * radius;
            let v = self.eval(z);
            let slope = dp.eval(z).norm();
            if slope > T::zero() {
                closest = closest.min(v.norm() / slope);
            } else if v.norm() == T::zero() {
                closest = T::zero();
            }
            total += arg_increment(&at, t0, t0 + h, 0)?;
        }
        if closest < lit(1e-8) {
            return Err(Error::Indeterminate {
                distance: closest.to_f64().unwrap_or(0.0),
            });
        }
        let turns = total / two_pi;
        turns
            .round()
            .to_usize()
            .ok_or(Error::Indeterminate { distance: 0.0 })
    }
}

fn arg_increment<T: Real, F: Fn(T) -> Complex<T>>(f: &F, t0: T, t1: T, depth: usize) -> Result<T> {
    let (a, b) = (f(t0), f(t1));
    if a.norm() == T::zero() || b.norm() == T::zero() {
        return Err(Error::Indeterminate { distance: 0.0 });
    }
    let step = (b / a).arg();
    if step.abs() <= T::FRAC_PI_4() {
        return Ok(step);
    }
    if depth >= 40 {
        return Err(Error::Indeterminate {
            distance: (t1 - t0).to_f64().unwrap_or(0.0),
        });
    }
    let mid = (t0 + t1) / lit(2.0);
    Ok(arg_increment(f, t0, mid, depth + 1)? + arg_increment(f, mid, t1, depth + 1)?)
}

/// Simultaneous Aberth-Ehrlich iteration followed by a Newton polish.
fn aberth<T: Real>(p: &Polynomial<T>) -> Result<Vec<Complex<T>>> {
    let n = p.degree().unwrap();
    let lead = p.coeffs[n];
    let monic: Vec<Complex<T>> = p.coeffs.iter().map(|&c| c / lead).collect();
    let monic = Polynomial { coeffs: monic };
    let dp = monic.derivative();
    // Fujiwara-style bound for the initial circle
    let bound = monic.coeffs[..n]
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm().powf(T::one() / from_usize(n - k)))
        .fold(T::zero(), T::max)
        * lit(2.0);
    let radius = bound.max(lit(1e-3));
    let offset = lit::<T>(0.4);
    let two_pi = T::PI() + T::PI();
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| unimodular(two_pi * from_usize(k) / from_usize(n) + offset) * radius)
        .collect();
    let tol = T::epsilon() * lit(16.0);
    let mut converged = false;
    let mut last = T::infinity();
    for _ in 0..500 {
        let mut worst = T::zero();
        for i in 0..n {
            let pv = monic.eval(z[i]);
            let dv = dp.eval(z[i]);
            if pv.norm() == T::zero() {
                continue;
            }
            let ratio = pv / dv;
            let repulsion: Complex<T> = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff.norm() == T::zero() {
                        Complex::default()
                    } else {
                        Complex::new(T::one(), T::zero()) / diff
                    }
                })
                .fold(Complex::default(), |a, b| a + b);
            let w = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulsion);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            worst = worst.max(w.norm() / (T::one() + z[i].norm()));
        }
        last = worst;
        if worst <= tol {
            converged = true;
            break;
        }
    }
    if !converged && last > lit(1e-8) {
        return Err(Error::ConvergenceFailure {
            method: "aberth",
            iterations: 500,
            residual: last.to_f64().unwrap_or(f64::NAN),
        });
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let dv = dp.eval(*r);
            if dv.norm() == T::zero() {
                break;
            }
            let step = monic.eval(*r) / dv;
            if !(step.norm() < lit::<T>(1e-6) * (T::one() + r.norm())) {
                break;
            }
            *r -= step;
        }
    }
    Ok(z)
}
