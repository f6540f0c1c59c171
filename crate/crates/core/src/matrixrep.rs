//! Finite sections of weighted composition and multiplication operators in the
//! orthonormal monomial basis, with the dense numerics run on them.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::funcalg::{AnalyticFunction, TaylorSeries};
use crate::linalg::{eigenvalues, hermitian_eigenvalues, power_norm, vec_norm, Matrix};
use crate::moebius::{is_self_map, MoebiusMap};
use crate::scalar::{from_usize, lit, real, unimodular, Real};
use crate::space::{CoeffVector, SpaceSpec};
use crate::tolerance::Tolerances;

/// Seed for every randomized start vector.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

/// The composition symbol: a linear-fractional map or a general analytic self-map.
#[derive(Debug, Clone, PartialEq)]
pub enum CompositionSymbol<T> {
    Moebius(MoebiusMap<T>),
    Analytic(AnalyticFunction<T>),
}

impl<T: Real> From<MoebiusMap<T>> for CompositionSymbol<T> {
    fn from(m: MoebiusMap<T>) -> Self {
        Self::Moebius(m)
    }
}

impl<T: Real> From<AnalyticFunction<T>> for CompositionSymbol<T> {
    fn from(f: AnalyticFunction<T>) -> Self {
        Self::Analytic(f)
    }
}

impl<T: Real> CompositionSymbol<T> {
    fn as_analytic(&self) -> Result<AnalyticFunction<T>> {
        match self {
            Self::Moebius(m) => AnalyticFunction::from_rational(m.as_rational()),
            Self::Analytic(f) => Ok(f.clone()),
        }
    }

    fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        match self {
            Self::Moebius(m) => m.eval(z).ok_or(Error::PoleEncountered),
            Self::Analytic(f) => f.evaluate(z),
        }
    }

    fn check_self_map(&self) -> Result<()> {
        let sup = match self {
            Self::Moebius(m) => is_self_map(m, &Tolerances::default())?.sup,
            Self::Analytic(f) => {
                let mut sup = T::zero();
                for k in 0..1024 {
                    let z = unimodular((T::PI() + T::PI()) * from_usize(k) / lit(1024.0));
                    sup = sup.max(f.evaluate(z)?.norm());
                }
                sup
            }
        };
        if sup > T::one() + Tolerances::<T>::default().boundary {
            return Err(Error::NotSelfMap(format!("sup modulus {sup}")));
        }
        Ok(())
    }
}

/// `N×N` section of an operator in the basis `e_n = zⁿ/β(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T> {
    pub entries: Matrix<T>,
    pub space: SpaceSpec<T>,
    pub provenance: String,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn order(&self) -> usize {
        self.entries.rows()
    }
}

/// Column `j` holds the coefficients of `ψ·φʲ`, rescaled by `β(n)/β(j)`.
pub fn build_weighted_composition<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &CompositionSymbol<T>,
    space: &SpaceSpec<T>,
    n: usize,
) -> Result<OperatorMatrix<T>> {
    phi.check_self_map()?;
    let sp = psi.expand(n)?;
    let sf = phi.as_analytic()?.expand(n)?;
    let beta = space.weights(n).beta;
    let fc = sf.coeffs();
    let f_support = fc.iter().rposition(|c| c.norm() != T::zero()).map_or(0, |k| k + 1);
    let mut col: Vec<Complex<T>> = sp.coeffs().to_vec();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            m[(i, j)] = col[i] * (beta[i] / beta[j]);
        }
        if j + 1 < n {
            let mut next = vec![Complex::default(); n];
            for (a, &x) in col.iter().enumerate() {
                if x.norm_sqr() == T::zero() {
                    continue;
                }
                for (b, &y) in fc.iter().enumerate().take(f_support.min(n - a)) {
                    next[a + b] += x * y;
                }
            }
            col = next;
        }
    }
    Ok(OperatorMatrix {
        entries: m,
        space: *space,
        provenance: "weighted composition".into(),
    })
}

/// Multiplication by an analytic `h`: entry `(n, j)` is `h_{n−j} β(n)/β(j)`.
pub fn build_multiplication<T: Real>(h: &AnalyticFunction<T>, space: &SpaceSpec<T>, n: usize) -> Result<OperatorMatrix<T>> {
    let s = h.expand(n)?;
    let beta = space.weights(n).beta;
    let entries = Matrix::from_fn(n, n, |i, j| {
        if i >= j {
            s.coeff(i - j) * (beta[i] / beta[j])
        } else {
            Complex::default()
        }
    });
    Ok(OperatorMatrix {
        entries,
        space: *space,
        provenance: "multiplication".into(),
    })
}

/// `M*M − MM*`, symmetrized.
pub fn self_commutator<T: Real>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let adj = m.adjoint();
    Ok(adj.matmul(m)?.sub(&m.matmul(&adj)?)?.hermitian_part())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMethod {
    TruncationEig,
    Gelfand,
    PowerIteration,
    /// Dense Hermitian eigenvalues of `M*M`, used when power iteration stalls.
    DenseHermitian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate<T> {
    pub value: T,
    pub method: EstimateMethod,
    pub order: usize,
    /// Residual or other method-specific diagnostic.
    pub diagnostic: T,
}

pub fn hermitian_min_eig<T: Real>(h: &Matrix<T>) -> Result<T> {
    Ok(hermitian_eigenvalues(h)?.first().copied().unwrap_or_else(T::zero))
}

/// Spectral norm of a Hermitian matrix.
pub fn hermitian_norm<T: Real>(h: &Matrix<T>) -> Result<T> {
    let ev = hermitian_eigenvalues(h)?;
    Ok(ev.iter().map(|x| x.abs()).fold(T::zero(), T::max))
}

/// Largest singular value: power iteration on `M*M` (relative residual 1e−8,
/// cap `10·N`), falling back to dense eigenvalues of `M*M`.
pub fn operator_norm<T: Real>(m: &Matrix<T>) -> Result<SpectralEstimate<T>> {
    operator_norm_seeded(m, DEFAULT_SEED)
}

pub fn operator_norm_seeded<T: Real>(m: &Matrix<T>, seed: u64) -> Result<SpectralEstimate<T>> {
    let n = m.cols();
    match power_norm(m, seed, 10 * n.max(1), lit(1e-8)) {
        Ok((value, _, residual)) => Ok(SpectralEstimate {
            value,
            method: EstimateMethod::PowerIteration,
            order: n,
            diagnostic: residual,
        }),
        Err(Error::ConvergenceFailure { residual, .. }) => {
            let gram = m.adjoint().matmul(m)?;
            let top = hermitian_eigenvalues(&gram)?.last().copied().unwrap_or_else(T::zero);
            Ok(SpectralEstimate {
                value: top.max(T::zero()).sqrt(),
                method: EstimateMethod::DenseHermitian,
                order: n,
                diagnostic: lit(residual),
            })
        }
        Err(e) => Err(e),
    }
}

pub fn truncation_spectral_radius<T: Real>(m: &Matrix<T>) -> Result<SpectralEstimate<T>> {
    let eig = eigenvalues(m)?;
    Ok(SpectralEstimate {
        value: eig.iter().map(|z| z.norm()).fold(T::zero(), T::max),
        method: EstimateMethod::TruncationEig,
        order: m.rows(),
        diagnostic: T::zero(),
    })
}

/// Eigenvalues of the section.
pub fn eigenvalues_of<T: Real>(m: &OperatorMatrix<T>) -> Result<Vec<Complex<T>>> {
    eigenvalues(&m.entries)
}

/// `‖Mᵏ‖^{1/k}`.
pub fn gelfand_estimate<T: Real>(m: &Matrix<T>, k: usize) -> Result<SpectralEstimate<T>> {
    if k == 0 {
        return Err(Error::InvalidParameter("Gelfand power must be at least 1".into()));
    }
    let p = m.pow(k)?;
    let norm = operator_norm(&p)?;
    Ok(SpectralEstimate {
        value: norm.value.powf(T::one() / from_usize(k)),
        method: EstimateMethod::Gelfand,
        order: m.rows(),
        diagnostic: norm.diagnostic,
    })
}

/// Residual of the adjoint kernel identity on the truncation, with the bound it
/// should respect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelResidual<T> {
    pub residual: T,
    /// `‖C‖_ub·‖(I − P)K_w‖` plus a rounding allowance.
    pub tail_bound: T,
}

/// `‖(I − P_N)K_w‖`.
pub fn kernel_tail_norm<T: Real>(space: &SpaceSpec<T>, w: Complex<T>, n: usize) -> T {
    let r2 = w.norm_sqr();
    if r2 == T::zero() {
        return T::zero();
    }
    let alpha = space.alpha().unwrap_or(-T::one());
    let gamma = space.gamma();
    // log of |w|^{2N}/β(N)²
    let mut log_term = from_usize::<T>(n) * r2.ln() - lit::<T>(2.0) * space.beta(n).ln();
    let mut sum = T::zero();
    let mut k = n;
    let floor = lit::<T>(-700.0);
    while log_term > floor && k < n + 1_000_000 {
        let term = log_term.exp();
        sum += term;
        if term <= sum * T::epsilon() * lit(1e-3) {
            break;
        }
        let kk: T = from_usize(k);
        let ratio = if gamma == T::one() && alpha == -T::one() {
            r2
        } else {
            r2 * (kk + alpha + lit(2.0)) / (kk + T::one())
        };
        log_term += ratio.ln();
        k += 1;
    }
    sum.sqrt()
}

/// `sup |f|` on the circle from dense samples.
pub fn boundary_sup<T: Real>(f: &AnalyticFunction<T>, samples: usize) -> Result<T> {
    let mut sup = T::zero();
    for k in 0..samples {
        let z = unimodular((T::PI() + T::PI()) * from_usize(k) / from_usize(samples));
        sup = sup.max(f.evaluate(z)?.norm());
    }
    Ok(sup)
}

/// Upper bound for `‖C_{ψ,φ}‖`: `sup|ψ| · ((1 + |φ(0)|)/(1 − |φ(0)|))^{γ/2}`.
pub fn norm_upper_bound<T: Real>(psi: &AnalyticFunction<T>, phi0: Complex<T>, space: &SpaceSpec<T>) -> Result<T> {
    let a = phi0.norm();
    let sup = boundary_sup(psi, 2048)? * lit(1.001);
    Ok(sup * ((T::one() + a) / (T::one() - a)).powf(space.gamma() / lit(2.0)))
}

/// `‖M* k_N(w) − conj(ψ(w)) k_N(φ(w))‖` against its analytic tail bound.
pub fn adjoint_kernel_residual<T: Real>(
    m: &OperatorMatrix<T>,
    psi: &AnalyticFunction<T>,
    phi: &CompositionSymbol<T>,
    w: Complex<T>,
    space: &SpaceSpec<T>,
) -> Result<KernelResidual<T>> {
    if *space != m.space {
        return Err(Error::SpaceMismatch);
    }
    let n = m.order();
    let kw = space.kernel(w, n)?;
    let pw = psi.evaluate(w)?;
    let fw = phi.eval(w)?;
    let kf = space.kernel(fw, n)?;
    let lhs = m.entries.adjoint_mul_vec(&kw.coeffs);
    let diff: Vec<Complex<T>> = lhs
        .iter()
        .zip(&kf.coeffs)
        .map(|(&a, &b)| a - pw.conj() * b)
        .collect();
    let residual = vec_norm(&diff);
    let phi0 = phi.eval(Complex::default())?;
    let c_ub = norm_upper_bound(psi, phi0, space)?;
    let rounding = lit::<T>(4.0)
        * from_usize::<T>(n)
        * T::epsilon()
        * (m.entries.frobenius_norm() * kw.norm() + pw.norm() * kf.norm());
    Ok(KernelResidual {
        residual,
        tail_bound: c_ub * kernel_tail_norm(space, w, n) + rounding,
    })
}

/// `‖Cf‖` (truncated, with tail bound) and `‖C*f‖` (closed form) for
/// `f = Σ cᵢ K_{wᵢ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramNorms<T> {
    pub c_norm: T,
    pub c_adjoint_norm: T,
    pub tail: T,
}

/// `⟨Σ aᵢK_{uᵢ}, Σ bⱼK_{vⱼ}⟩` via `⟨K_u, K_v⟩ = (1 − ūv)^{−γ}`.
fn kernel_combination_inner<T: Real>(
    space: &SpaceSpec<T>,
    pts: &[Complex<T>],
    a: &[Complex<T>],
) -> Result<T> {
    let mut s: Complex<T> = Complex::default();
    for (i, (&ui, &ai)) in pts.iter().zip(a).enumerate() {
        for (j, (&uj, &aj)) in pts.iter().zip(a).enumerate() {
            let g = if i == j {
                real(space.kernel_norm(ui)?.powi(2))
            } else {
                // ⟨K_{u_i}, K_{u_j}⟩ = K_{u_i}(u_j)
                space.kernel_inner(ui, uj)?
            };
            s += ai * aj.conj() * g;
        }
    }
    Ok(s.re.max(T::zero()).sqrt())
}

/// `‖C*f‖` for `f = Σ cᵢK_{wᵢ}`, using `C*K_w = conj(ψ(w)) K_{φ(w)}`.
pub fn adjoint_kernel_norm<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
    points: &[Complex<T>],
    coeffs: &[Complex<T>],
) -> Result<T> {
    let mut images = Vec::with_capacity(points.len());
    let mut weights = Vec::with_capacity(points.len());
    for (&w, &c) in points.iter().zip(coeffs) {
        images.push(phi.eval(w).ok_or(Error::PoleEncountered)?);
        weights.push(c * psi.evaluate(w)?.conj());
    }
    kernel_combination_inner(space, &images, &weights)
}

/// The functions `ψ·(K_{wᵢ}∘φ)` whose combination is `C f`.
pub fn image_terms<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
    points: &[Complex<T>],
) -> Result<Vec<AnalyticFunction<T>>> {
    points
        .iter()
        .map(|&w| Ok(psi.mul(&space.kernel_function(w)?.compose_with_moebius(phi)?)))
        .collect()
}

/// Cauchy-estimate bound for `‖(I − P_N) Σ cᵢ gᵢ‖` from samples of the sum on
/// circles `|z| = r` inside the common disk of analyticity.
pub fn series_tail_bound<T: Real>(terms: &[AnalyticFunction<T>], coeffs: &[Complex<T>], n: usize) -> Result<T> {
    let mut ratio = T::zero();
    for t in terms {
        ratio = ratio.max(t.singularity_ratio()?);
    }
    let radius = if ratio == T::zero() { lit(4.0) } else { T::one() / ratio };
    if radius <= T::one() {
        return Ok(T::infinity());
    }
    let mut best = T::infinity();
    for frac in [0.2, 0.4, 0.6, 0.8, 0.9, 0.95] {
        let r = T::one() + (radius - T::one()) * lit(frac);
        let samples = 512usize;
        let mut m_r = T::zero();
        let mut ok = true;
        for k in 0..samples {
            let z = unimodular((T::PI() + T::PI()) * from_usize(k) / from_usize(samples)) * r;
            let mut v = Complex::default();
            for (t, &c) in terms.iter().zip(coeffs) {
                match t.evaluate_continued(z) {
                    Ok(x) => v += x * c,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                break;
            }
            m_r = m_r.max(v.norm());
        }
        if !ok {
            continue;
        }
        let m_r = m_r * lit(1.1);
        let r2 = r * r;
        // Σ_{k≥N} |g_k|² β(k)² ≤ M_r² r^{−2N}/(1 − r^{−2}) since β ≤ 1
        let log_bound = lit::<T>(2.0) * m_r.ln() - from_usize::<T>(n) * r2.ln() - (T::one() - T::one() / r2).ln();
        best = best.min((log_bound / lit(2.0)).exp());
    }
    Ok(best)
}

pub fn kernel_gram_norms<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
    points: &[Complex<T>],
    coeffs: &[Complex<T>],
    n: usize,
) -> Result<GramNorms<T>> {
    if points.len() != coeffs.len() || points.is_empty() {
        return Err(Error::DimensionMismatch("points and coefficients".into()));
    }
    let c_adjoint_norm = adjoint_kernel_norm(psi, phi, space, points, coeffs)?;
    let terms = image_terms(psi, phi, space, points)?;
    let mut total: Option<TaylorSeries<T>> = None;
    for (t, &c) in terms.iter().zip(coeffs) {
        let s = t.expand(n)?.scale(c);
        total = Some(match total {
            None => s,
            Some(acc) => {
                let coeffs: Vec<Complex<T>> = acc.coeffs().iter().zip(s.coeffs()).map(|(&a, &b)| a + b).collect();
                TaylorSeries::new(coeffs, acc.tail_ratio.max(s.tail_ratio))?
            }
        });
    }
    let total = total.expect("at least one term");
    let c_norm = CoeffVector::from_taylor(&total, *space).norm();
    let tail = series_tail_bound(&terms, coeffs, n)?;
    if !(tail <= c_norm * lit(0.1)) {
        return Err(Error::PrecisionLoss {
            tail: tail.to_f64().unwrap_or(f64::INFINITY),
            norm: c_norm.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(GramNorms {
        c_norm,
        c_adjoint_norm,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcalg::Polynomial;
    use crate::scalar::near;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn half() -> CompositionSymbol<f64> {
        MoebiusMap::from_real(0.5, 0.0, 0.0, 1.0).unwrap().into()
    }

    fn parabolic() -> MoebiusMap<f64> {
        MoebiusMap::from_real(1.0, 1.0, -1.0, 3.0).unwrap()
    }

    fn psi1() -> AnalyticFunction<f64> {
        AnalyticFunction::polynomial(Polynomial::from_real(&[0.5, -0.25])).unwrap()
    }

    fn one() -> AnalyticFunction<f64> {
        AnalyticFunction::constant(c(1.0, 0.0))
    }

    #[test]
    fn dilation_is_diagonal_in_both_spaces() {
        for space in [SpaceSpec::hardy(), SpaceSpec::bergman(0.0).unwrap()] {
            let m = build_weighted_composition(&one(), &half(), &space, 3).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { 0.5f64.powi(i as i32) } else { 0.0 };
                    assert!(near(m.entries[(i, j)], c(want, 0.0), 1e-15));
                }
            }
        }
    }

    #[test]
    fn cauchy_product_columns() {
        let m = build_weighted_composition(&psi1(), &parabolic().into(), &SpaceSpec::hardy(), 2).unwrap();
        assert!(near(m.entries[(0, 0)], c(0.5, 0.0), 1e-15));
        assert!(near(m.entries[(1, 0)], c(-0.25, 0.0), 1e-15));
        assert!(near(m.entries[(0, 1)], c(1.0 / 6.0, 0.0), 1e-15));
        assert!(near(m.entries[(1, 1)], c(5.0 / 36.0, 0.0), 1e-15));
    }

    #[test]
    fn lower_triangular_when_origin_fixed() {
        let phi = MoebiusMap::from_real(1.0, 0.0, 1.0, 2.0).unwrap();
        let m = build_weighted_composition(&psi1(), &phi.into(), &SpaceSpec::bergman(0.5).unwrap(), 24).unwrap();
        assert!(m.entries.is_lower_triangular());
        let m = build_weighted_composition(&psi1(), &parabolic().into(), &SpaceSpec::hardy(), 24).unwrap();
        assert!(!m.entries.is_lower_triangular());
    }

    #[test]
    fn multiplication_examples() {
        let h = SpaceSpec::<f64>::hardy();
        let m = build_multiplication(&AnalyticFunction::constant(c(2.0, 1.0)), &h, 4).unwrap();
        assert!(m.entries.sub(&Matrix::identity(4).scale(c(2.0, 1.0))).unwrap().max_abs() == 0.0);
        let z = AnalyticFunction::polynomial(Polynomial::from_real(&[0.0, 1.0])).unwrap();
        let m = build_multiplication(&z, &h, 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j + 1 { 1.0 } else { 0.0 };
                assert_eq!(m.entries[(i, j)], c(want, 0.0));
            }
        }
        let b = SpaceSpec::<f64>::bergman(0.0).unwrap();
        let m = build_multiplication(&z, &b, 5).unwrap();
        for k in 0..4 {
            let want = ((k + 1) as f64 / (k + 2) as f64).sqrt();
            assert!(near(m.entries[(k + 1, k)], c(want, 0.0), 1e-15));
        }
    }

    #[test]
    fn commutator_examples() {
        let d = Matrix::<f64>::from_fn(3, 3, |i, j| if i == j { c(0.5f64.powi(i as i32), 0.0) } else { C::default() });
        assert_eq!(self_commutator(&d).unwrap().max_abs(), 0.0);
        assert_eq!(hermitian_min_eig(&self_commutator(&d).unwrap()).unwrap(), 0.0);
        let s = Matrix::<f64>::from_fn(3, 3, |i, j| if i == j + 1 { c(1.0, 0.0) } else { C::default() });
        let comm = self_commutator(&s).unwrap();
        for (i, want) in [1.0, 0.0, -1.0].iter().enumerate() {
            assert_eq!(comm[(i, i)], c(*want, 0.0));
        }
    }

    #[test]
    fn norm_and_radius_examples() {
        let d = Matrix::<f64>::from_fn(3, 3, |i, j| if i == j { c(0.5f64.powi(i as i32), 0.0) } else { C::default() });
        assert!((operator_norm(&d).unwrap().value - 1.0).abs() < 1e-12);
        assert!((truncation_spectral_radius(&d).unwrap().value - 1.0).abs() < 1e-15);
        let shift = Matrix::<f64>::from_fn(16, 16, |i, j| if i == j + 1 { c(1.0, 0.0) } else { C::default() });
        assert!((operator_norm(&shift).unwrap().value - 1.0).abs() < 1e-12);
        assert_eq!(truncation_spectral_radius(&shift).unwrap().value, 0.0);
        let m = build_weighted_composition(&one(), &half(), &SpaceSpec::hardy(), 32).unwrap();
        assert!((gelfand_estimate(&m.entries, 16).unwrap().value - 1.0).abs() < 1e-3);
    }

    #[test]
    fn multiplication_norm_below_sup() {
        let h = AnalyticFunction::polynomial(Polynomial::new(vec![c(0.3, 0.1), c(-0.5, 0.2), c(0.0, 0.4)])).unwrap();
        let sup = boundary_sup(&h, 4096).unwrap();
        for space in [SpaceSpec::hardy(), SpaceSpec::bergman(1.0).unwrap()] {
            let m = build_multiplication(&h, &space, 48).unwrap();
            assert!(operator_norm(&m.entries).unwrap().value <= sup + 1e-8);
        }
    }

    #[test]
    fn adjoint_residual_examples() {
        let h = SpaceSpec::<f64>::hardy();
        let m = build_weighted_composition(&one(), &half(), &h, 128).unwrap();
        let r = adjoint_kernel_residual(&m, &one(), &half(), c(0.5, 0.0), &h).unwrap();
        assert!(r.residual < 1e-10);

        let phi: CompositionSymbol<f64> = parabolic().into();
        let m = build_weighted_composition(&psi1(), &phi, &h, 256).unwrap();
        let r = adjoint_kernel_residual(&m, &psi1(), &phi, c(0.3, 0.0), &h).unwrap();
        assert!(r.residual <= r.tail_bound, "{r:?}");
        let r0 = adjoint_kernel_residual(&m, &psi1(), &phi, C::default(), &h).unwrap();
        assert!(r0.residual < 1e-12);
    }

    #[test]
    fn gram_norm_examples() {
        let h = SpaceSpec::<f64>::hardy();
        let id = MoebiusMap::<f64>::identity();
        let pts = [c(0.3, 0.1), c(-0.2, 0.5)];
        let co = [c(1.0, 0.0), c(-0.5, 0.3)];
        let g = kernel_gram_norms(&one(), &id, &h, &pts, &co, 128).unwrap();
        assert!((g.c_norm - g.c_adjoint_norm).abs() < 1e-10);

        let phi = parabolic();
        for space in [h, SpaceSpec::bergman(0.0).unwrap()] {
            let w = c(0.4, -0.3);
            let g = kernel_gram_norms(&psi1(), &phi, &space, &[w], &[c(1.0, 0.0)], 256).unwrap();
            let fw = phi.eval(w).unwrap();
            let closed = psi1().evaluate(w).unwrap().norm() * (1.0 - fw.norm_sqr()).powf(-space.gamma() / 2.0);
            assert!((g.c_adjoint_norm - closed).abs() < 1e-10);
            assert!(g.tail < 1e-6);
        }
    }
}
