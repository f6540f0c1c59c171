//! Search for `f` in the span of a few kernels with `‖C*f‖ > ‖Cf‖`.

use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::funcalg::AnalyticFunction;
use crate::linalg::{generalized_top_eigen, Matrix};
use crate::matrixrep::{kernel_gram_norms, DEFAULT_SEED};
use crate::moebius::MoebiusMap;
use crate::scalar::{from_usize, lit, unimodular, Real};
use crate::space::{CoeffVector, SpaceSpec};

use super::verdict::Witness;

/// Floor added to the tail bound before the factor-ten safety margin.
pub const WITNESS_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessBudget {
    /// Truncation order for `‖Cf‖`.
    pub order: usize,
    /// Kernel sets tried after single kernels.
    pub max_sets: usize,
    pub time_limit: Duration,
    pub seed: u64,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        Self {
            order: 256,
            max_sets: 600,
            time_limit: Duration::from_secs(60),
            seed: DEFAULT_SEED,
        }
    }
}

/// Radii `0, 0.1, …, 0.9, 0.95` times 16 angles.
pub fn witness_grid<T: Real>() -> Vec<Complex<T>> {
    let mut out = vec![Complex::default()];
    let radii = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95];
    for r in radii {
        for k in 0..16 {
            out.push(unimodular((T::PI() + T::PI()) * from_usize(k) / lit(16.0)) * lit::<T>(r));
        }
    }
    out
}

/// `a` certifies when `‖C*f‖ − ‖Cf‖ > 10 (tail + floor)`.
pub fn certifies<T: Real>(w: &Witness<T>) -> bool {
    w.gap() > lit::<T>(10.0) * (w.tail + lit(WITNESS_FLOOR))
}

struct Probe<T> {
    w: Complex<T>,
    /// `conj(ψ(w))`, the weight of `K_{φ(w)}` in `C*K_w`.
    adj: Complex<T>,
    image: Complex<T>,
    /// Orthonormal coefficients of `ψ·(K_w∘φ)`.
    vec: Vec<Complex<T>>,
    ratio: T,
}

fn probe<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
    w: Complex<T>,
    n: usize,
) -> Result<Probe<T>> {
    let term = psi.mul(&space.kernel_function(w)?.compose_with_moebius(phi)?);
    let s = term.expand(n)?;
    let vec = CoeffVector::from_taylor(&s, *space).coeffs;
    let adj = psi.evaluate(w)?.conj();
    let image = phi.eval(w).ok_or(Error::PoleEncountered)?;
    let num = adj.norm() * space.kernel_norm(image)?;
    let den = crate::linalg::vec_norm(&vec);
    let ratio = if den > T::zero() { num / den } else { T::infinity() };
    Ok(Probe {
        w,
        adj,
        image,
        vec,
        ratio,
    })
}

fn certify<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
    points: Vec<Complex<T>>,
    coeffs: Vec<Complex<T>>,
    n: usize,
) -> Result<Option<Witness<T>>> {
    let g = kernel_gram_norms(psi, phi, space, &points, &coeffs, n)?;
    let w = Witness {
        points,
        coeffs,
        c_norm: g.c_norm,
        c_adjoint_norm: g.c_adjoint_norm,
        tail: g.tail,
    };
    Ok(certifies(&w).then_some(w))
}

/// Best combination of the probes in `set` by the generalized eigenproblem
/// `A x = λ B x` with `A`, `B` the Gram matrices of `C*K_w` and `C K_w`.
fn optimize<T: Real>(probes: &[Probe<T>], set: &[usize], space: &SpaceSpec<T>) -> Option<(T, Vec<Complex<T>>)> {
    let k = set.len();
    let mut a = Matrix::zeros(k, k);
    let mut b = Matrix::zeros(k, k);
    for (i, &pi) in set.iter().enumerate() {
        for (j, &pj) in set.iter().enumerate() {
            let (x, y) = (&probes[pi], &probes[pj]);
            // entry (i, j) = ⟨v_j, v_i⟩
            a[(i, j)] = y.adj * x.adj.conj() * space.kernel_inner(y.image, x.image).ok()?;
            b[(i, j)] = crate::linalg::dot(&y.vec, &x.vec);
        }
    }
    let a = a.hermitian_part();
    let b = b.hermitian_part();
    generalized_top_eigen(&a, &b).ok()
}

/// Kernel combinations with `‖C*f‖ > ‖Cf‖ + 10×tail`: single kernels on
/// [`witness_grid`], then pairs and triples among the best single kernels,
/// then random sets, each optimized by the generalized eigenvalue ratio.
/// Fails with `PrecisionLoss` when every certification attempt was too loose.
pub fn witness_search<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
    budget: &WitnessBudget,
) -> Result<Option<Witness<T>>> {
    let start = Instant::now();
    let n = budget.order;
    let mut probes = Vec::new();
    let mut last_err = None;
    for w in witness_grid::<T>() {
        match probe(psi, phi, space, w, n) {
            Ok(p) => probes.push(p),
            Err(e) => last_err = Some(e),
        }
    }
    if probes.is_empty() {
        return Err(last_err.unwrap_or(Error::Unavailable("empty witness grid".into())));
    }
    let mut order: Vec<usize> = (0..probes.len()).collect();
    order.sort_by(|&i, &j| probes[j].ratio.partial_cmp(&probes[i].ratio).unwrap_or(std::cmp::Ordering::Equal));

    let one = Complex::new(T::one(), T::zero());
    // Certification attempts, and the last one lost to a loose tail bound.
    let (mut attempts, mut losses) = (0usize, 0usize);
    let mut precision_loss = None;
    for &i in &order {
        if probes[i].ratio <= T::one() || start.elapsed() > budget.time_limit {
            break;
        }
        attempts += 1;
        match certify(psi, phi, space, vec![probes[i].w], vec![one], n) {
            Ok(Some(w)) => return Ok(Some(w)),
            Ok(None) => {}
            Err(e @ Error::PrecisionLoss { .. }) => {
                losses += 1;
                precision_loss = Some(e);
            }
            Err(e) => return Err(e),
        }
    }

    let mut sets: Vec<Vec<usize>> = Vec::new();
    let top: Vec<usize> = order.iter().copied().take(12).collect();
    for a in 0..top.len() {
        for b in a + 1..top.len() {
            sets.push(vec![top[a], top[b]]);
        }
    }
    for a in 0..8.min(top.len()) {
        for b in a + 1..8.min(top.len()) {
            for c in b + 1..8.min(top.len()) {
                sets.push(vec![top[a], top[b], top[c]]);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    while sets.len() < budget.max_sets && probes.len() >= 3 {
        let k = if sets.len().is_multiple_of(2) { 2 } else { 3 };
        sets.push(sample(&mut rng, probes.len(), k).into_vec());
    }
    sets.truncate(budget.max_sets);

    for set in &sets {
        if start.elapsed() > budget.time_limit {
            break;
        }
        let Some((lambda, x)) = optimize(&probes, set, space) else {
            continue;
        };
        if !(lambda > T::one() + lit(1e-9)) {
            continue;
        }
        let scale = x.iter().map(|c| c.norm()).fold(T::zero(), T::max);
        let coeffs: Vec<Complex<T>> = x.iter().map(|&c| c / scale).collect();
        let points = set.iter().map(|&i| probes[i].w).collect();
        attempts += 1;
        match certify(psi, phi, space, points, coeffs, n) {
            Ok(Some(w)) => return Ok(Some(w)),
            Ok(None) => {}
            Err(e @ Error::PrecisionLoss { .. }) => {
                losses += 1;
                precision_loss = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    // Every candidate was lost to truncation: the order is too small to decide.
    match precision_loss {
        Some(e) if losses == attempts => Err(e),
        _ => Ok(None),
    }
}
