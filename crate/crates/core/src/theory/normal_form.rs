//! Normal forms `φ = α_p∘(δα_p)`, `ψ = ψ(p) K_p/(K_p∘φ)` and the conjugation
//! moving an interior fixed point to the origin.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::funcalg::AnalyticFunction;
use crate::moebius::{alpha_p, MoebiusMap};
use crate::scalar::{from_usize, lit, real, unimodular, Real};
use crate::space::SpaceSpec;

/// Residual allowed in `φ(p) = p`.
pub const FIXED_POINT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormSymbols<T> {
    pub p: Complex<T>,
    pub delta: Complex<T>,
    pub psi: AnalyticFunction<T>,
    pub phi: MoebiusMap<T>,
    pub value_at_p: Complex<T>,
}

/// The compact normal pair with interior fixed point `p` and multiplier `δ`.
/// `δ = 0` is rejected: the map would be constant.
pub fn normal_form<T: Real>(
    p: Complex<T>,
    delta: Complex<T>,
    value_at_p: Complex<T>,
    space: &SpaceSpec<T>,
) -> Result<NormalFormSymbols<T>> {
    if p.norm() >= T::one() {
        return Err(Error::InvalidParameter(format!("|p| = {} is not < 1", p.norm())));
    }
    if delta.norm() >= T::one() {
        return Err(Error::InvalidParameter(format!(
            "|δ| = {} is not < 1; the operator would not be compact",
            delta.norm()
        )));
    }
    if delta.norm() == T::zero() {
        return Err(Error::InvalidParameter("δ = 0 makes φ constant".into()));
    }
    let phi = normal_form_map(p, delta)?;
    let psi = fixed_point_weight(p, value_at_p, &phi, space)?;
    Ok(NormalFormSymbols {
        p,
        delta,
        psi,
        phi,
        value_at_p,
    })
}

/// `α_p∘(δα_p)`.
pub fn normal_form_map<T: Real>(p: Complex<T>, delta: Complex<T>) -> Result<MoebiusMap<T>> {
    let a = alpha_p(p)?;
    let d = MoebiusMap::dilation(delta)?;
    a.compose(&d.compose(&a)?)
}

/// `ψ(p) K_p/(K_p∘φ)`, the only weight allowed for a hyponormal operator
/// with interior fixed point `p` under the spectral hypothesis.
pub fn fixed_point_weight<T: Real>(
    p: Complex<T>,
    value_at_p: Complex<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
) -> Result<AnalyticFunction<T>> {
    check_fixed(phi, p)?;
    let kp = space.kernel_function(p)?;
    let kp_phi = kp.compose_with_moebius(phi)?;
    Ok(kp.mul(&kp_phi.recip()?).scale(value_at_p))
}

fn check_fixed<T: Real>(phi: &MoebiusMap<T>, p: Complex<T>) -> Result<()> {
    if p.norm() >= T::one() {
        return Err(Error::InvalidParameter(format!("|p| = {} is not < 1", p.norm())));
    }
    let fp = phi.eval(p).ok_or(Error::PoleEncountered)?;
    let residual = (fp - p).norm();
    if residual > lit(FIXED_POINT_TOL) {
        return Err(Error::NotAFixedPoint {
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Sample points used to compare two weights.
pub fn comparison_points<T: Real>() -> Vec<Complex<T>> {
    let mut out = Vec::with_capacity(20);
    for r in [0.2, 0.5, 0.8, 0.95] {
        for k in 0..5 {
            let theta = (T::PI() + T::PI()) * (from_usize::<T>(k) + lit(0.3)) / lit(5.0);
            out.push(unimodular(theta) * lit::<T>(r));
        }
    }
    out
}

/// Relative agreement of two functions on [`comparison_points`].
pub fn weights_agree<T: Real>(f: &AnalyticFunction<T>, g: &AnalyticFunction<T>, tol: T) -> Result<bool> {
    for z in comparison_points() {
        let a = f.evaluate(z)?;
        let b = g.evaluate(z)?;
        if (a - b).norm() > tol * (T::one() + a.norm()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `C_{ψ,φ}` conjugated by the unitary `C_{ψ_p, α_p}`, `ψ_p = K_p/‖K_p‖`:
/// returns `(q, α_p∘φ∘α_p)` with
/// `q = g·(ψ∘α_p)·(ψ_p∘φ∘α_p)/‖K_p‖`, where `g = K_p` is the auxiliary
/// function of `α_p`.
pub fn conjugate_to_origin<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    p: Complex<T>,
    space: &SpaceSpec<T>,
) -> Result<(AnalyticFunction<T>, MoebiusMap<T>)> {
    check_fixed(phi, p)?;
    let a = alpha_p(p)?;
    let phi_t = a.compose(&phi.compose(&a)?)?;
    let kp = space.kernel_function(p)?;
    let norm2 = space.kernel_norm(p)?.powi(2);
    let psi_a = psi.compose_with_moebius(&a)?;
    let kp_phi_a = kp.compose_with_moebius(&phi.compose(&a)?)?;
    let q = kp.mul(&psi_a).mul(&kp_phi_a).scale(real(T::one() / norm2));
    Ok((q, phi_t))
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

    #[test]
    fn origin_collapses() {
        let nf = normal_form(C::default(), c(0.4, 0.0), c(2.0, 0.0), &SpaceSpec::hardy()).unwrap();
        assert!(nf.phi.approx_eq(&MoebiusMap::dilation(c(0.4, 0.0)).unwrap(), 1e-14));
        assert!(nf.psi.approx_constant(1e-13).is_some_and(|v| near(v, c(2.0, 0.0), 1e-13)));
    }

    #[test]
    fn delta_zero_and_unit_rejected() {
        let h = SpaceSpec::<f64>::hardy();
        assert!(matches!(normal_form(c(0.3, 0.0), C::default(), c(1.0, 0.0), &h), Err(Error::InvalidParameter(_))));
        assert!(matches!(normal_form(c(0.3, 0.0), c(1.0, 0.0), c(1.0, 0.0), &h), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn fixed_point_and_multiplier() {
        for space in [SpaceSpec::hardy(), SpaceSpec::bergman(0.0).unwrap()] {
            let nf = normal_form(c(0.3, 0.0), c(0.4, 0.0), c(1.0, 0.0), &space).unwrap();
            let p = c(0.3, 0.0);
            assert!(near(nf.phi.eval(p).unwrap(), p, 1e-14));
            assert!((nf.phi.derivative(p).unwrap().norm() - 0.4).abs() < 1e-13);
            assert!(near(nf.psi.evaluate(p).unwrap(), c(1.0, 0.0), 1e-13));
            // ψ·(K_p∘φ) = K_p
            for z in comparison_points::<f64>() {
                let kp = space.kernel_function(p).unwrap();
                let lhs = nf.psi.evaluate(z).unwrap() * kp.evaluate(nf.phi.eval(z).unwrap()).unwrap();
                assert!(near(lhs, kp.evaluate(z).unwrap(), 1e-12));
            }
        }
    }

    #[test]
    fn weight_requires_fixed_point() {
        let phi = MoebiusMap::from_real(1.0, 0.0, 1.0, 2.0).unwrap();
        let h = SpaceSpec::<f64>::hardy();
        for space in [h, SpaceSpec::bergman(0.0).unwrap()] {
            let w = fixed_point_weight(C::default(), c(3.0, 0.0), &phi, &space).unwrap();
            assert!(w.approx_constant(1e-13).is_some());
        }
        assert!(matches!(
            fixed_point_weight(c(0.5, 0.0), c(1.0, 0.0), &phi, &h),
            Err(Error::NotAFixedPoint { .. })
        ));
        let nf = normal_form(c(0.3, 0.0), c(0.4, 0.0), c(1.0, 0.0), &h).unwrap();
        let w = fixed_point_weight(nf.p, c(1.0, 0.0), &nf.phi, &h).unwrap();
        assert!(weights_agree(&w, &nf.psi, 1e-12).unwrap());
    }

    #[test]
    fn conjugation_at_origin_is_reflection() {
        let phi = MoebiusMap::from_real(1.0, 0.0, 1.0, 2.0).unwrap();
        let psi = AnalyticFunction::polynomial(Polynomial::from_real(&[1.0, 0.5, -0.2])).unwrap();
        let (q, pt) = conjugate_to_origin(&psi, &phi, C::default(), &SpaceSpec::hardy()).unwrap();
        for z in comparison_points::<f64>() {
            assert!(near(pt.eval(z).unwrap(), -phi.eval(-z).unwrap(), 1e-13));
            assert!(near(q.evaluate(z).unwrap(), psi.evaluate(-z).unwrap(), 1e-13));
        }
    }

    #[test]
    fn conjugated_normal_form_is_constant_dilation() {
        for space in [SpaceSpec::hardy(), SpaceSpec::bergman(1.0).unwrap()] {
            let v = c(0.7, -0.2);
            let nf = normal_form(c(0.3, 0.1), c(0.4, 0.2), v, &space).unwrap();
            let (q, pt) = conjugate_to_origin(&nf.psi, &nf.phi, nf.p, &space).unwrap();
            assert!(pt.approx_eq(&MoebiusMap::dilation(c(0.4, 0.2)).unwrap(), 1e-12));
            for z in comparison_points::<f64>() {
                assert!(near(q.evaluate(z).unwrap(), v, 1e-12));
            }
        }
    }

    #[test]
    fn q_at_origin_is_psi_at_p() {
        let phi = MoebiusMap::from_real(1.0, 0.0, 1.0, 2.0).unwrap();
        let p = C::default();
        let psi = AnalyticFunction::polynomial(Polynomial::new(vec![c(0.2, 0.3), c(1.0, -1.0)])).unwrap();
        let (q, _) = conjugate_to_origin(&psi, &phi, p, &SpaceSpec::bergman(0.0).unwrap()).unwrap();
        assert!(near(q.evaluate(C::default()).unwrap(), psi.evaluate(p).unwrap(), 1e-12));
        let nf = normal_form(c(-0.2, 0.4), c(0.5, 0.0), c(1.0, 0.0), &SpaceSpec::hardy()).unwrap();
        let (q, _) = conjugate_to_origin(&psi, &nf.phi, nf.p, &SpaceSpec::hardy()).unwrap();
        assert!(near(q.evaluate(C::default()).unwrap(), psi.evaluate(nf.p).unwrap(), 1e-12));
    }
}
