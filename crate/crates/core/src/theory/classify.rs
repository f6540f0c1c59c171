//! Hyponormality decisions for `C_φ` and `C_{ψ,φ}` with linear-fractional `φ`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::funcalg::AnalyticFunction;
use crate::moebius::{classify, MapClass, MapKind, MoebiusMap};
use crate::scalar::{from_usize, lit, unimodular, Real};
use crate::space::{SpaceKind, SpaceSpec};
use crate::tolerance::Tolerances;

use super::normal_form::{fixed_point_weight, normal_form_map, weights_agree};
use super::verdict::{Citation, HyponormalityVerdict, KernelInequalityViolation, Outcome};
use super::witness::{witness_search, WitnessBudget};

/// Weight values below this count as zero.
pub const WEIGHT_ZERO_TOL: f64 = 1e-10;
/// Agreement required for an exact normal-form match.
pub const FORM_MATCH_TOL: f64 = 1e-10;
/// A kernel inequality fails only by more than this.
pub const VIOLATION_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassifyOptions {
    /// Escalate undecided cases to a numeric witness search.
    pub numeric: bool,
    pub budget: WitnessBudget,
}

/// `{0} ∪ {r e^{2πik/16} : r = 0.1, …, 0.9, k < 16}`.
pub fn default_kernel_grid<T: Real>() -> Vec<Complex<T>> {
    let mut out = vec![Complex::default()];
    for i in 1..10 {
        let r: T = lit::<T>(0.1) * from_usize(i);
        for k in 0..16 {
            out.push(unimodular((T::PI() + T::PI()) * from_usize(k) / lit(16.0)) * r);
        }
    }
    out
}

/// Decision for the unweighted `C_φ`.
pub fn classify_unweighted<T: Real>(phi: &MoebiusMap<T>, space: &SpaceSpec<T>) -> Result<HyponormalityVerdict<T>> {
    let tol = Tolerances::default();
    let class = classify(phi, &tol)?;
    let kind = Some(class.kind);
    let verdict = |outcome, citation, detail: String| {
        Ok(HyponormalityVerdict::new(
            outcome,
            citation,
            kind,
            vec![format!("{} map on {space}", class.kind.name()), detail],
        ))
    };
    let phi0 = phi.eval(Complex::default()).ok_or(Error::PoleEncountered)?;
    if phi0.norm() > tol.fixed {
        return verdict(
            Outcome::NotHyponormal,
            Citation::OriginNotFixed,
            format!("φ(0) = {phi0} is not 0"),
        );
    }
    let [a, _, c, d] = phi.coefficients();
    let (a, c) = (a / d, c / d);
    if c.norm() <= tol.coefficient {
        return verdict(Outcome::Normal, Citation::RotationOrDilation, format!("φ(z) = λz with λ = {a}"));
    }
    if c.norm() < T::one() && (a - Complex::new(T::one() - c.norm(), T::zero())).norm() <= tol.coefficient {
        let mut v = HyponormalityVerdict::new(
            Outcome::CandidateNotExcluded,
            Citation::HyperbolicCandidateForm,
            kind,
            vec![
                format!("{} map on {space}", class.kind.name()),
                format!("φ(z) = (1 − |c|)z/(cz + 1) with c = {c}; only necessity is known"),
            ],
        );
        v.candidate_c = Some(c);
        return Ok(v);
    }
    let (citation, detail) = match class.kind {
        k if k.is_automorphism() => (Citation::AutomorphismNotRotation, "automorphism fixing 0 that is not a rotation"),
        MapKind::InteriorContraction => (Citation::CompactNotDilation, "compact symbol that is not a dilation"),
        MapKind::BoundaryContactNoBoundaryFixedPoint => (Citation::DistinctContact, "contact point is not fixed"),
        MapKind::ParabolicNonAuto => (Citation::ParabolicSingleFixedPoint, "parabolic non-automorphism"),
        _ => (Citation::HyperbolicNotCandidate, "hyperbolic non-automorphism outside the candidate form"),
    };
    verdict(Outcome::NotHyponormal, citation, detail.into())
}

/// `|ψ(w)| ((1 − |w|²)/(1 − |φ(w)|²))^{γ/2}`, the normalized `‖C*K_w‖`.
pub fn kernel_ratio<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
    w: Complex<T>,
) -> Result<T> {
    let fw = phi.eval(w).ok_or(Error::PoleEncountered)?;
    let ratio = (T::one() - w.norm_sqr()) / (T::one() - fw.norm_sqr());
    Ok(psi.evaluate(w)?.norm() * ratio.powf(space.gamma() / lit(2.0)))
}

/// First grid point violating the parabolic kernel inequality
/// `|ψ(ζ)| ≥ |ψ(w)| ((1 − |w|²)/(1 − |φ(w)|²))^{γ/2}`.
pub fn kernel_inequality_check<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
    grid: &[Complex<T>],
) -> Result<Option<KernelInequalityViolation<T>>> {
    let class = classify(phi, &Tolerances::default())?;
    if class.kind != MapKind::ParabolicNonAuto {
        return Err(Error::HypothesisMismatch(format!(
            "needs a parabolic non-automorphism, got {}",
            class.kind.name()
        )));
    }
    let zeta = boundary_point(&class)?;
    let rhs = psi.evaluate(zeta)?.norm();
    for &w in grid {
        if w.norm() >= T::one() {
            return Err(Error::OutsideDisk {
                modulus: w.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        let lhs = kernel_ratio(psi, phi, space, w)?;
        if lhs - rhs > lit(VIOLATION_MARGIN) {
            return Ok(Some(KernelInequalityViolation { w, lhs, rhs }));
        }
    }
    Ok(None)
}

pub(crate) fn boundary_point<T: Real>(class: &MapClass<T>) -> Result<Complex<T>> {
    class
        .contact
        .map(|c| c.zeta)
        .or_else(|| class.boundary_denjoy_wolff().and_then(|p| p.finite()))
        .ok_or_else(|| Error::HypothesisMismatch("no boundary point".into()))
}

struct FormMatch<T> {
    p: Complex<T>,
    delta: Complex<T>,
    /// Both the map and the weight have the normal form.
    matched: bool,
}

fn normal_form_match<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    class: &MapClass<T>,
    space: &SpaceSpec<T>,
) -> Result<Option<FormMatch<T>>> {
    let Some(fp) = class.interior_fixed_point() else {
        return Ok(None);
    };
    let p = fp.finite().expect("interior points are finite");
    let delta = fp.multiplier;
    let form = normal_form_map(p, delta)?;
    if !form.approx_eq(phi, lit(FORM_MATCH_TOL)) {
        return Ok(Some(FormMatch { p, delta, matched: false }));
    }
    let target = fixed_point_weight(p, psi.evaluate(p)?, phi, space)?;
    let matched = weights_agree(psi, &target, lit(FORM_MATCH_TOL))?;
    Ok(Some(FormMatch { p, delta, matched }))
}

/// Decision tree for `C_{ψ,φ}`.
pub fn classify_weighted<T: Real>(
    psi: &AnalyticFunction<T>,
    phi: &MoebiusMap<T>,
    space: &SpaceSpec<T>,
    options: &ClassifyOptions,
) -> Result<HyponormalityVerdict<T>> {
    if psi.is_zero() {
        return Err(Error::ZeroSymbol);
    }
    if let Some(c0) = psi.approx_constant(lit(1e-13)) {
        let mut v = classify_unweighted(phi, space)?;
        v.details.insert(0, format!("constant weight {c0}; same verdict as C_φ"));
        return Ok(v);
    }
    let tol = Tolerances::default();
    let class = classify(phi, &tol)?;
    let kind = Some(class.kind);
    let mut details = vec![format!("{} map on {space}", class.kind.name())];
    let done = |outcome, citation, details| Ok(HyponormalityVerdict::new(outcome, citation, kind, details));

    // (i) contact at a non-fixed boundary point
    if class.kind == MapKind::BoundaryContactNoBoundaryFixedPoint {
        let ct = class.contact.expect("contact recorded");
        details.push(format!("φ({}) = {} with ζ ≠ η", ct.zeta, ct.eta));
        return done(Outcome::NotHyponormal, Citation::DistinctContact, details);
    }
    // (ii) weight vanishing at the single fixed contact point
    let contact_value = match class.contact {
        Some(ct) if !class.is_automorphism() => {
            let v = psi.evaluate(ct.zeta)?;
            details.push(format!("single contact ζ = {}, ψ(ζ) = {v}", ct.zeta));
            if v.norm() <= lit(WEIGHT_ZERO_TOL) {
                return done(Outcome::NotHyponormal, Citation::ContactZero, details);
            }
            Some((ct.zeta, v))
        }
        _ => None,
    };
    // (iii) compact with a boundary Denjoy-Wolff point
    if let Some(dw) = class.boundary_denjoy_wolff() {
        if !class.is_automorphism() {
            let zeta = dw.finite().expect("boundary points are finite");
            if psi.evaluate(zeta)?.norm() <= lit(WEIGHT_ZERO_TOL) {
                return done(Outcome::NotHyponormal, Citation::CompactBoundaryDenjoyWolff, details);
            }
            details.push("boundary Denjoy-Wolff point, operator not compact".into());
        }
    }
    // (iv) parabolic non-automorphism: kernel inequality on the grid
    if class.kind == MapKind::ParabolicNonAuto {
        if let Some(viol) = kernel_inequality_check(psi, phi, space, &default_kernel_grid())? {
            details.push(format!(
                "kernel inequality fails at w = {}: {} > {}",
                viol.w, viol.lhs, viol.rhs
            ));
            let mut v = HyponormalityVerdict::new(Outcome::NotHyponormal, Citation::KernelNormInequality, kind, details);
            v.violation = Some(viol);
            return Ok(v);
        }
        details.push("kernel inequality holds on the grid".into());
    }
    // (v) compact: hyponormal iff exact normal form
    if matches!(class.kind, MapKind::InteriorContraction | MapKind::EllipticAuto) {
        if let Some(FormMatch { p, delta, matched }) = normal_form_match(psi, phi, &class, space)? {
            details.push(format!("interior fixed point p = {p}, multiplier δ = {delta}"));
            if matched {
                let citation = if class.kind == MapKind::InteriorContraction {
                    Citation::CompactNormalForm
                } else {
                    Citation::NormalWeightForm
                };
                return done(Outcome::Normal, citation, details);
            }
            if class.kind == MapKind::InteriorContraction {
                details.push("not the normal form ψ(p)K_p/(K_p∘φ), α_p∘(δα_p)".into());
                return done(Outcome::NotHyponormal, Citation::CompactNormalForm, details);
            }
        }
    }
    // Hardy, interior and boundary fixed points: the weight form is forced
    if class.kind == MapKind::HyperbolicNonAuto && space.kind() == SpaceKind::Hardy {
        if let (Some(fp), Some((zeta, vz))) = (class.interior_fixed_point(), contact_value) {
            let p = fp.finite().expect("interior points are finite");
            let vp = psi.evaluate(p)?;
            if vz.norm() <= vp.norm() {
                let target = fixed_point_weight(p, vp, phi, space)?;
                if !weights_agree(psi, &target, lit(FORM_MATCH_TOL))? {
                    details.push(format!(
                        "|ψ(ζ)| ≤ |ψ(p)| at ζ = {zeta}, p = {p} but ψ ≠ ψ(p)K_p/(K_p∘φ)"
                    ));
                    return done(Outcome::NotHyponormal, Citation::FixedPointWeightForm, details);
                }
                details.push("weight has the forced form; norm would be |ψ(p)|".into());
            }
        }
    }
    // (vi) undecided
    if options.numeric {
        if let Some(w) = witness_search(psi, phi, space, &options.budget)? {
            details.push(format!("numeric witness with gap {} and tail {}", w.gap(), w.tail));
            let mut v = HyponormalityVerdict::new(Outcome::CertifiedNotNumeric, Citation::NumericWitness, kind, details);
            v.witness = Some(w);
            return Ok(v);
        }
        details.push("witness search found nothing within budget".into());
    }
    done(Outcome::CandidateNotExcluded, Citation::NoExclusion, details)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcalg::Polynomial;
    use crate::moebius::{cayley_parabolic, hyperbolic_nonauto_form};
    use crate::scalar::near;
    use crate::theory::normal_form::normal_form;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn parabolic() -> MoebiusMap<f64> {
        MoebiusMap::from_real(1.0, 1.0, -1.0, 3.0).unwrap()
    }

    fn psi1() -> AnalyticFunction<f64> {
        AnalyticFunction::polynomial(Polynomial::from_real(&[0.5, -0.25])).unwrap()
    }

    fn psi2() -> AnalyticFunction<f64> {
        AnalyticFunction::polynomial(Polynomial::from_real(&[3.0, 2.0, -3.0])).unwrap()
    }

    fn spaces() -> [SpaceSpec<f64>; 2] {
        [SpaceSpec::hardy(), SpaceSpec::bergman(0.0).unwrap()]
    }

    #[test]
    fn unweighted_examples() {
        let h = SpaceSpec::hardy();
        let rot = MoebiusMap::dilation(c(0.0, 1.0)).unwrap();
        assert_eq!(classify_unweighted(&rot, &h).unwrap().outcome, Outcome::Normal);
        let v = classify_unweighted(&MoebiusMap::from_real(1.0, 0.0, 1.0, 2.0).unwrap(), &h).unwrap();
        assert_eq!(v.outcome, Outcome::CandidateNotExcluded);
        assert!(near(v.candidate_c.unwrap(), c(0.5, 0.0), 1e-14));
        let v = classify_unweighted(&parabolic(), &h).unwrap();
        assert_eq!(v.outcome, Outcome::NotHyponormal);
        assert_eq!(v.map_kind, Some(MapKind::ParabolicNonAuto));
    }

    #[test]
    fn unweighted_cases_with_origin_fixed() {
        let h = SpaceSpec::<f64>::hardy();
        // contact at −1 sent to 1
        let v = classify_unweighted(&MoebiusMap::from_real(-1.0, 0.0, 1.0, 2.0).unwrap(), &h).unwrap();
        assert_eq!(v.citation, Citation::DistinctContact);
        // compact, fixes 0, not a dilation
        let v = classify_unweighted(&MoebiusMap::from_real(0.5, 0.0, 0.25, 1.0).unwrap(), &h).unwrap();
        assert_eq!(v.citation, Citation::CompactNotDilation);
        // fixes 0 and 1 but a ≠ 1 − |c|
        let v = classify_unweighted(&MoebiusMap::from_real(1.0, 0.0, 0.0, 1.0).unwrap(), &h).unwrap();
        assert_eq!(v.outcome, Outcome::Normal);
        for cc in [c(0.3, 0.0), c(0.0, 0.6), c(-0.2, -0.5)] {
            let v = classify_unweighted(&hyperbolic_nonauto_form(cc).unwrap(), &h).unwrap();
            assert_eq!(v.outcome, Outcome::CandidateNotExcluded);
            assert!(near(v.candidate_c.unwrap(), cc, 1e-12));
        }
    }

    #[test]
    fn kernel_inequality_examples() {
        let h = SpaceSpec::hardy();
        let v = kernel_inequality_check(&psi1(), &parabolic(), &h, &[C::default()]).unwrap().unwrap();
        assert!((v.margin() - (0.5 * (9.0f64 / 8.0).sqrt() - 0.25)).abs() < 1e-12);
        let one = AnalyticFunction::constant(c(1.0, 0.0));
        // ψ ≡ 1 still fails at w = 0: the ratio there is (1 − |φ(0)|²)^{−γ/2} > 1
        for space in spaces() {
            let v = kernel_inequality_check(&one, &parabolic(), &space, &default_kernel_grid()).unwrap().unwrap();
            assert_eq!(v.w, C::default());
            assert!((v.lhs - (9.0f64 / 8.0).powf(space.gamma() / 2.0)).abs() < 1e-12);
        }
        // a weight small away from ζ = 1 passes everywhere on the grid
        let peaked = AnalyticFunction::polynomial(Polynomial::from_real(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
        assert!(kernel_inequality_check(&peaked, &parabolic(), &h, &default_kernel_grid()).unwrap().is_none());
        let b = SpaceSpec::bergman(0.0).unwrap();
        let v = kernel_inequality_check(&psi2(), &parabolic(), &b, &[C::default()]).unwrap().unwrap();
        assert!((v.lhs - 3.0 * 9.0 / 8.0).abs() < 1e-12);
        assert!(matches!(
            kernel_inequality_check(&one, &MoebiusMap::dilation(c(0.5, 0.0)).unwrap(), &h, &[C::default()]),
            Err(Error::HypothesisMismatch(_))
        ));
    }

    #[test]
    fn weighted_examples() {
        let opts = ClassifyOptions::default();
        for space in spaces() {
            for psi in [psi1(), psi2()] {
                let v = classify_weighted(&psi, &parabolic(), &space, &opts).unwrap();
                assert_eq!(v.outcome, Outcome::NotHyponormal);
                assert_eq!(v.citation, Citation::KernelNormInequality);
                assert_eq!(v.violation.unwrap().w, C::default());
            }
        }
        let nf = normal_form(c(0.3, 0.0), c(0.4, 0.0), c(1.0, 0.0), &SpaceSpec::hardy()).unwrap();
        let v = classify_weighted(&nf.psi, &nf.phi, &SpaceSpec::hardy(), &opts).unwrap();
        assert_eq!(v.outcome, Outcome::Normal);
        assert_eq!(v.citation, Citation::CompactNormalForm);
    }

    #[test]
    fn weighted_exclusions() {
        let opts = ClassifyOptions::default();
        let h = SpaceSpec::hardy();
        // vanishing at the contact point
        let psi = AnalyticFunction::polynomial(Polynomial::from_real(&[1.0, -1.0])).unwrap();
        let v = classify_weighted(&psi, &parabolic(), &h, &opts).unwrap();
        assert_eq!(v.citation, Citation::ContactZero);
        // contact ζ ≠ η
        let v = classify_weighted(&psi1(), &MoebiusMap::from_real(-1.0, 0.0, 1.0, 2.0).unwrap(), &h, &opts).unwrap();
        assert_eq!(v.citation, Citation::DistinctContact);
        // compact, wrong weight
        let nf = normal_form(c(0.3, 0.0), c(0.4, 0.0), c(1.0, 0.0), &h).unwrap();
        let v = classify_weighted(&psi1(), &nf.phi, &h, &opts).unwrap();
        assert_eq!(v.outcome, Outcome::NotHyponormal);
        assert!(matches!(classify_weighted(&AnalyticFunction::constant(C::default()), &nf.phi, &h, &opts), Err(Error::ZeroSymbol)));
    }

    #[test]
    fn hardy_forced_weight() {
        let h = SpaceSpec::hardy();
        let phi = MoebiusMap::from_real(1.0, 0.0, 1.0, 2.0).unwrap();
        // |ψ(−1)| = 1 ≤ 3 = |ψ(0)|, ψ not constant
        let psi = AnalyticFunction::polynomial(Polynomial::from_real(&[3.0, 2.0])).unwrap();
        let v = classify_weighted(&psi, &phi, &h, &ClassifyOptions::default()).unwrap();
        assert_eq!(v.citation, Citation::FixedPointWeightForm);
        let b = SpaceSpec::bergman(0.0).unwrap();
        let v = classify_weighted(&psi, &phi, &b, &ClassifyOptions::default()).unwrap();
        assert_eq!(v.outcome, Outcome::CandidateNotExcluded);
    }

    #[test]
    fn normal_forms_over_grid() {
        for space in spaces() {
            for p in [c(0.0, 0.0), c(0.3, 0.0), c(-0.2, 0.5), c(0.6, 0.0)] {
                for d in [c(0.4, 0.0), c(-0.3, 0.3), c(0.6, 0.0)] {
                    let nf = normal_form(p, d, c(1.0, 0.5), &space).unwrap();
                    let v = classify_weighted(&nf.psi, &nf.phi, &space, &ClassifyOptions::default()).unwrap();
                    assert_eq!(v.outcome, Outcome::Normal, "p={p} δ={d}");
                }
            }
        }
    }

    #[test]
    fn parabolic_automorphism_unweighted() {
        let h = SpaceSpec::<f64>::hardy();
        let phi = cayley_parabolic(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        let v = classify_unweighted(&phi, &h).unwrap();
        assert_eq!(v.outcome, Outcome::NotHyponormal);
        assert_eq!(v.map_kind, Some(MapKind::ParabolicAuto));
    }
}
