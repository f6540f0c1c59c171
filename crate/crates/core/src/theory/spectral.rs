//! Closed forms for spectral radii, eigenvalue and norm bounds.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::funcalg::AnalyticFunction;
use crate::matrixrep::norm_upper_bound;
use crate::moebius::{alpha_p, angular_derivative, classify, MapClass, MapKind, MoebiusMap};
use crate::scalar::{lit, Real};
use crate::space::SpaceSpec;
use crate::tolerance::Tolerances;

use super::classify::{classify_weighted, default_kernel_grid, kernel_ratio, ClassifyOptions};
use super::normal_form::FIXED_POINT_TOL;
use super::verdict::{Citation, Outcome};

/// A value together with the fact it rests on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Formula<T> {
    pub value: T,
    pub citation: Citation,
}

impl<T> Formula<T> {
    fn new(value: T, citation: Citation) -> Self {
        Self { value, citation }
    }
}

fn unavailable<T>(reason: impl Into<String>) -> Result<T> {
    Err(Error::Unavailable(reason.into()))
}

fn boundary_dw<T: Real>(class: &MapClass<T>) -> Option<(Complex<T>, T)> {
    class
        .boundary_denjoy_wolff()
        .and_then(|p| p.finite().map(|z| (z, p.multiplier.norm())))
}

/// `φ′(ζ)^{−γ/2}` for a boundary Denjoy-Wolff point `ζ`.
fn boundary_factor<T: Real>(deriv: T, space: &SpaceSpec<T>) -> T {
    deriv.powf(-space.gamma() / lit(2.0))
}

/// Spectral radius of `C_{ψ,φ}` where a closed form applies.
pub fn spectral_radius_closed<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
) -> Result<Formula<T>> {
    let class = classify(phi, &Tolerances::default())?;
    let constant = psi.approx_constant(lit(1e-13));
    match class.kind {
        MapKind::ParabolicNonAuto => {
            let (zeta, _) = boundary_dw(&class).ok_or_else(|| Error::Unavailable("no boundary fixed point".into()))?;
            Ok(Formula::new(psi.evaluate(zeta)?.norm(), Citation::ParabolicRadius))
        }
        MapKind::HyperbolicNonAuto if boundary_dw(&class).is_some() => {
            let (zeta, d) = boundary_dw(&class).expect("checked");
            Ok(Formula::new(
                psi.evaluate(zeta)?.norm() * boundary_factor(d, space),
                Citation::BoundaryRadius,
            ))
        }
        MapKind::HyperbolicAuto | MapKind::ParabolicAuto => match constant {
            Some(c) => {
                let (_, d) = boundary_dw(&class).expect("automorphisms here have a boundary Denjoy-Wolff point");
                Ok(Formula::new(c.norm() * boundary_factor(d, space), Citation::ConstantWeightRadius))
            }
            None => unavailable("an automorphism touches the whole circle; only constant weights are decided"),
        },
        MapKind::Identity | MapKind::EllipticAuto => match constant {
            Some(c) => Ok(Formula::new(c.norm(), Citation::ConstantWeightRadius)),
            None => unavailable("elliptic automorphism with a nonconstant weight"),
        },
        _ => {
            let p = class
                .interior_fixed_point()
                .and_then(|p| p.finite())
                .ok_or_else(|| Error::Unavailable("no interior fixed point".into()))?;
            let verdict = classify_weighted(psi, phi, space, &ClassifyOptions::default())?;
            if verdict.outcome == Outcome::Normal {
                return Ok(Formula::new(psi.evaluate(p)?.norm(), Citation::InteriorFixedPointRadius));
            }
            match constant {
                Some(c) => Ok(Formula::new(c.norm(), Citation::ConstantWeightRadius)),
                None => unavailable("hyponormality not established"),
            }
        }
    }
}

/// Essential spectral radius of `C_φ` at a boundary Denjoy-Wolff point.
pub fn essential_spectral_radius_closed<T: Real>(phi: &MoebiusMap<T>, space: &SpaceSpec<T>) -> Result<Formula<T>> {
    let class = classify(phi, &Tolerances::default())?;
    match boundary_dw(&class) {
        Some((_, d)) => Ok(Formula::new(boundary_factor(d, space), Citation::EssentialRadius)),
        None => unavailable(format!("{} map has no boundary Denjoy-Wolff point", class.kind.name())),
    }
}

/// `|ψ(ζ)| r(C_φ)` bounding every eigenvalue, `ζ` the Denjoy-Wolff point.
pub fn eigenvalue_bound<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
) -> Result<Formula<T>> {
    let class = classify(phi, &Tolerances::default())?;
    if matches!(class.kind, MapKind::Identity | MapKind::EllipticAuto) {
        return unavailable("identity or elliptic automorphism");
    }
    let dw = class
        .denjoy_wolff
        .ok_or_else(|| Error::Unavailable("no Denjoy-Wolff point".into()))?;
    let zeta = dw.finite().expect("Denjoy-Wolff points are finite");
    let r_phi = if dw.on_boundary {
        boundary_factor(dw.multiplier.norm(), space)
    } else {
        T::one()
    };
    Ok(Formula::new(psi.evaluate(zeta)?.norm() * r_phi, Citation::EigenvalueBound))
}

/// `max_w |ψ(w)| ((1 − |w|²)/(1 − |φ(w)|²))^{γ/2}` over the grid.
pub fn norm_lower_bound_grid<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
    grid: &[Complex<T>],
) -> Result<T> {
    let mut best = T::zero();
    for &w in grid {
        best = best.max(kernel_ratio(psi, phi, space, w)?);
    }
    Ok(best)
}

/// Norm bounds valid if `C_{ψ,φ}` is hyponormal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBounds<T> {
    pub lower: T,
    pub upper: T,
    pub citation: Citation,
    /// `μ` of the interior/boundary form; `|ψ(ζ)|` otherwise.
    pub mu: T,
}

fn boundary_fixed<T: Real>(class: &MapClass<T>) -> Result<(Complex<T>, T)> {
    let fp = class
        .boundary_fixed_points()
        .next()
        .ok_or_else(|| Error::Unavailable("no boundary fixed point".into()))?;
    Ok((fp.finite().expect("finite"), fp.multiplier.norm()))
}

/// Conditional bounds `[|ψ(ζ)|/|φ′(ζ)|^{γ/2}, max(|ψ(ζ)|, |ψ(0)|)]` when
/// `φ(0) = 0`, otherwise the interior-fixed-point form of [`norm_bounds_at`].
pub fn norm_bounds<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
) -> Result<NormBounds<T>> {
    let class = classify(phi, &Tolerances::default())?;
    if class.kind != MapKind::HyperbolicNonAuto {
        return unavailable(format!(
            "needs one boundary fixed point and single contact, got {}",
            class.kind.name()
        ));
    }
    let (zeta, d) = boundary_fixed(&class)?;
    let phi0 = phi.eval(Complex::default()).ok_or(Error::PoleEncountered)?;
    if phi0.norm() <= lit(FIXED_POINT_TOL) {
        let vz = psi.evaluate(zeta)?.norm();
        let v0 = psi.evaluate(Complex::default())?.norm();
        return Ok(NormBounds {
            lower: vz / d.powf(space.gamma() / lit(2.0)),
            upper: vz.max(v0),
            citation: Citation::OriginBoundaryNormBounds,
            mu: vz,
        });
    }
    let p = class
        .interior_fixed_point()
        .and_then(|p| p.finite())
        .ok_or_else(|| Error::Unavailable("no interior fixed point".into()))?;
    norm_bounds_at(psi, phi, p, zeta, space)
}

/// `[μ/|φ′(ζ)|^{γ/2}, max(μ, |ψ(p)|)]` with
/// `μ = |ψ(ζ) K_p(α_p(ζ)) K_p(ζ)|/‖K_p‖²`.
pub fn norm_bounds_at<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    p: Complex<T>,
    zeta: Complex<T>,
    space: &SpaceSpec<T>,
) -> Result<NormBounds<T>> {
    let tol = Tolerances::default();
    let fp = phi.eval(p).ok_or(Error::PoleEncountered)?;
    if (fp - p).norm() > lit(FIXED_POINT_TOL) || p.norm() >= T::one() {
        return Err(Error::NotAFixedPoint {
            residual: (fp - p).norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    let fz = phi.eval(zeta).ok_or(Error::PoleEncountered)?;
    if (fz - zeta).norm() > tol.fixed {
        return unavailable("ζ is not a boundary fixed point");
    }
    let d = angular_derivative(phi, zeta, &tol)?.norm();
    let gamma = space.gamma();
    let kp = |z: Complex<T>| (Complex::new(T::one(), T::zero()) - p.conj() * z).powf(-gamma);
    let a = alpha_p(p)?;
    let az = a.eval(zeta).ok_or(Error::PoleEncountered)?;
    let mu = (psi.evaluate(zeta)? * kp(az) * kp(zeta)).norm() / space.kernel_norm(p)?.powi(2);
    Ok(NormBounds {
        lower: mu / d.powf(gamma / lit(2.0)),
        upper: mu.max(psi.evaluate(p)?.norm()),
        citation: Citation::InteriorBoundaryNormBounds,
        mu,
    })
}

/// Singular part `|φ′(ζ)|^{−1} δ_ζ` of the Clark measure at `α = η = φ(ζ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClarkSingularPart<T> {
    pub alpha: Complex<T>,
    pub atoms: Vec<(Complex<T>, T)>,
}

pub fn clark_singular_part<T: Real>(phi: &MoebiusMap<T>) -> Result<ClarkSingularPart<T>> {
    let tol = Tolerances::default();
    let class = classify(phi, &tol)?;
    if class.is_automorphism() {
        return Err(Error::HypothesisMismatch("automorphism".into()));
    }
    let contact = class
        .contact
        .ok_or_else(|| Error::HypothesisMismatch("no boundary contact".into()))?;
    let d = angular_derivative(phi, contact.zeta, &tol)?.norm();
    Ok(ClarkSingularPart {
        alpha: contact.eta,
        atoms: vec![(contact.zeta, T::one() / d)],
    })
}

/// Everything known in closed form about `r`, `r_e` and `‖C_{ψ,φ}‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport<T> {
    pub r: Option<Formula<T>>,
    pub r_e: Option<Formula<T>>,
    pub norm_lower: Formula<T>,
    pub norm_upper: Option<Formula<T>>,
    /// Valid only if the operator is hyponormal.
    pub conditional_bounds: Option<NormBounds<T>>,
    pub eigenvalue_bound: Option<Formula<T>>,
    /// Reasons for the fields left empty.
    pub unavailable: Vec<String>,
}

fn keep<T>(r: Result<T>, field: &str, notes: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Unavailable(why)) | Err(Error::HypothesisMismatch(why)) => {
            notes.push(format!("{field}: {why}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// `r_e(C_{ψ,φ})` when the weight enters only through its value at the
/// boundary Denjoy-Wolff point.
fn weighted_essential_radius<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
) -> Result<Formula<T>> {
    let class = classify(phi, &Tolerances::default())?;
    let base = essential_spectral_radius_closed(phi, space)?;
    if let Some(c) = psi.approx_constant(lit(1e-13)) {
        return Ok(Formula::new(c.norm() * base.value, base.citation));
    }
    match (class.contact, boundary_dw(&class)) {
        (Some(ct), Some((zeta, _))) if !class.is_automorphism() && (ct.zeta - zeta).norm() <= lit(1e-8) => Ok(
            Formula::new(psi.evaluate(zeta)?.norm() * base.value, base.citation),
        ),
        _ => unavailable("weight not determined by a single contact point"),
    }
}

pub fn spectral_report<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
) -> Result<SpectralReport<T>> {
    let mut notes = Vec::new();
    let r = keep(spectral_radius_closed(psi, phi, space), "r", &mut notes)?;
    let r_e = keep(weighted_essential_radius(psi, phi, space), "r_e", &mut notes)?;
    let lower = norm_lower_bound_grid(psi, phi, space, &default_kernel_grid())?;
    let phi0 = phi.eval(Complex::default()).ok_or(Error::PoleEncountered)?;
    let upper = norm_upper_bound(psi, phi0, space)?;
    let conditional_bounds = keep(norm_bounds(psi, phi, space), "conditional bounds", &mut notes)?;
    let eigenvalue_bound = keep(eigenvalue_bound(psi, phi, space), "eigenvalue bound", &mut notes)?;
    Ok(SpectralReport {
        r,
        r_e,
        norm_lower: Formula::new(lower, Citation::KernelLowerBound),
        norm_upper: Some(Formula::new(upper, Citation::SubordinationUpperBound)),
        conditional_bounds,
        eigenvalue_bound,
        unavailable: notes,
    })
}

/// Hausdorff distance between two finite point sets.
pub fn hausdorff_distance<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    let one_sided = |x: &[Complex<T>], y: &[Complex<T>]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(T::infinity(), T::min))
            .fold(T::zero(), T::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcalg::Polynomial;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn parabolic() -> MoebiusMap<f64> {
        MoebiusMap::from_real(1.0, 1.0, -1.0, 3.0).unwrap()
    }

    fn hyp_auto() -> MoebiusMap<f64> {
        MoebiusMap::from_real(1.0, 0.5, 0.5, 1.0).unwrap()
    }

    fn zz2() -> MoebiusMap<f64> {
        MoebiusMap::from_real(1.0, 0.0, 1.0, 2.0).unwrap()
    }

    fn psi1() -> AnalyticFunction<f64> {
        AnalyticFunction::polynomial(Polynomial::from_real(&[0.5, -0.25])).unwrap()
    }

    fn constant(v: f64) -> AnalyticFunction<f64> {
        AnalyticFunction::constant(c(v, 0.0))
    }

    fn spaces() -> [SpaceSpec<f64>; 2] {
        [SpaceSpec::hardy(), SpaceSpec::bergman(0.0).unwrap()]
    }

    #[test]
    fn radius_examples() {
        for space in spaces() {
            let r = spectral_radius_closed(&psi1(), &parabolic(), &space).unwrap();
            assert!((r.value - 0.25).abs() < 1e-14);
            assert_eq!(r.citation, Citation::ParabolicRadius);
        }
        let r = spectral_radius_closed(&constant(1.0), &hyp_auto(), &SpaceSpec::hardy()).unwrap();
        assert!((r.value - 3f64.sqrt()).abs() < 1e-10);
        let half = MoebiusMap::dilation(c(0.5, 0.0)).unwrap();
        let r = spectral_radius_closed(&AnalyticFunction::constant(c(0.0, -2.5)), &half, &SpaceSpec::hardy()).unwrap();
        assert!((r.value - 2.5).abs() < 1e-14);
        assert_eq!(r.citation, Citation::InteriorFixedPointRadius);
        assert!(matches!(
            spectral_radius_closed(&psi1(), &hyp_auto(), &SpaceSpec::hardy()),
            Err(Error::Unavailable(_))
        ));
    }

    #[test]
    fn essential_radius_examples() {
        let h = SpaceSpec::hardy();
        let b = SpaceSpec::bergman(0.0).unwrap();
        assert!((essential_spectral_radius_closed(&parabolic(), &h).unwrap().value - 1.0).abs() < 1e-12);
        assert!((essential_spectral_radius_closed(&parabolic(), &b).unwrap().value - 1.0).abs() < 1e-12);
        assert!((essential_spectral_radius_closed(&hyp_auto(), &b).unwrap().value - 3.0).abs() < 1e-10);
        assert!(matches!(
            essential_spectral_radius_closed(&zz2(), &h),
            Err(Error::Unavailable(_))
        ));
        // parabolic consistency with ψ ≡ 1
        for space in spaces() {
            let r = spectral_radius_closed(&constant(1.0), &parabolic(), &space).unwrap().value;
            let re = essential_spectral_radius_closed(&parabolic(), &space).unwrap().value;
            assert!((r - 1.0).abs() < 1e-12 && (re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvalue_bound_examples() {
        let h = SpaceSpec::hardy();
        let half = MoebiusMap::dilation(c(0.5, 0.0)).unwrap();
        assert!((eigenvalue_bound(&psi1(), &parabolic(), &h).unwrap().value - 0.25).abs() < 1e-14);
        assert!((eigenvalue_bound(&constant(1.0), &half, &h).unwrap().value - 1.0).abs() < 1e-14);
        let z = AnalyticFunction::polynomial(Polynomial::from_real(&[0.0, 1.0])).unwrap();
        assert_eq!(eigenvalue_bound(&z, &half, &h).unwrap().value, 0.0);
        let rot = MoebiusMap::dilation(c(0.0, 1.0)).unwrap();
        assert!(matches!(eigenvalue_bound(&z, &rot, &h), Err(Error::Unavailable(_))));
    }

    #[test]
    fn norm_bound_examples() {
        let h = SpaceSpec::hardy();
        let nb = norm_bounds(&constant(1.0), &zz2(), &h).unwrap();
        assert!((nb.lower - 0.5f64.sqrt()).abs() < 1e-12 && (nb.upper - 1.0).abs() < 1e-14);
        assert_eq!(nb.citation, Citation::OriginBoundaryNormBounds);
        let nb = norm_bounds_at(&constant(1.0), &zz2(), C::default(), c(-1.0, 0.0), &h).unwrap();
        assert!((nb.mu - 1.0).abs() < 1e-14);
        assert!((nb.lower - 0.5f64.sqrt()).abs() < 1e-12 && (nb.upper - 1.0).abs() < 1e-14);
        let b = SpaceSpec::bergman(0.0).unwrap();
        assert!((norm_bounds(&constant(1.0), &zz2(), &b).unwrap().lower - 0.5).abs() < 1e-12);
        assert!(matches!(norm_bounds(&psi1(), &parabolic(), &h), Err(Error::Unavailable(_))));
    }

    #[test]
    fn grid_lower_bounds() {
        let h = SpaceSpec::hardy();
        let id = MoebiusMap::identity();
        assert!((norm_lower_bound_grid(&constant(1.0), &id, &h, &default_kernel_grid()).unwrap() - 1.0).abs() < 1e-14);
        let v = norm_lower_bound_grid(&psi1(), &parabolic(), &h, &[C::default()]).unwrap();
        assert!((v - 0.5 * (9.0f64 / 8.0).sqrt()).abs() < 1e-14);
        let half = MoebiusMap::dilation(c(0.5, 0.0)).unwrap();
        let radial: Vec<C> = (0..100).map(|k| c(k as f64 * 0.01, 0.0)).collect();
        assert!((norm_lower_bound_grid(&constant(1.0), &half, &h, &radial).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn clark_examples() {
        let s = clark_singular_part(&parabolic()).unwrap();
        assert!((s.alpha - c(1.0, 0.0)).norm() < 1e-10);
        assert!((s.atoms[0].0 - c(1.0, 0.0)).norm() < 1e-8 && (s.atoms[0].1 - 1.0).abs() < 1e-8);
        let s = clark_singular_part(&zz2()).unwrap();
        assert!((s.atoms[0].0 - c(-1.0, 0.0)).norm() < 1e-8 && (s.atoms[0].1 - 0.5).abs() < 1e-8);
        assert!(matches!(
            clark_singular_part(&MoebiusMap::dilation(c(0.5, 0.0)).unwrap()),
            Err(Error::HypothesisMismatch(_))
        ));
        assert!(matches!(clark_singular_part(&hyp_auto()), Err(Error::HypothesisMismatch(_))));
    }

    #[test]
    fn report_invariants() {
        for space in spaces() {
            for (psi, phi) in [(psi1(), parabolic()), (constant(1.0), zz2()), (constant(2.0), hyp_auto())] {
                let rep = spectral_report(&psi, &phi, &space).unwrap();
                if let Some(up) = rep.norm_upper {
                    assert!(rep.norm_lower.value <= up.value);
                }
                if let (Some(r), Some(re)) = (rep.r, rep.r_e) {
                    assert!(re.value <= r.value + 1e-12);
                }
            }
        }
    }

    #[test]
    fn hausdorff_basic() {
        let a = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(0.0, 0.1), c(1.0, 0.0), c(1.0, 0.0)];
        assert!((hausdorff_distance(&a, &b) - 0.1).abs() < 1e-15);
    }
}
