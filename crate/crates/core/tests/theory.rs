use hypocomp::matrixrep::{build_weighted_composition, operator_norm};
use hypocomp::moebius::{alpha_p, cayley_parabolic, hyperbolic_nonauto_form};
use hypocomp::theory::{
    classify_unweighted, classify_weighted, conjugate_to_origin, kernel_inequality_check, normal_form, norm_bounds,
    spectral_radius_closed, spectral_report, witness_search, Citation, ClassifyOptions, Outcome, WitnessBudget,
};
use hypocomp::{AnalyticFunction, Error, MoebiusMap, Polynomial, SpaceSpec, C64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn point(r: f64) -> impl Strategy<Value = C64> {
    (0.0..r, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn spaces() -> [SpaceSpec<f64>; 2] {
    [SpaceSpec::hardy(), SpaceSpec::bergman(0.0).unwrap()]
}

fn no_numeric() -> ClassifyOptions {
    ClassifyOptions {
        numeric: false,
        ..ClassifyOptions::default()
    }
}

#[test]
fn zero_weight_is_an_error() {
    let zero = AnalyticFunction::constant(c(0.0, 0.0));
    let phi = MoebiusMap::dilation(c(0.5, 0.0)).unwrap();
    let r = classify_weighted(&zero, &phi, &SpaceSpec::hardy(), &no_numeric());
    assert!(matches!(r, Err(Error::ZeroSymbol)));
}

#[test]
fn constant_weight_parabolic_violates_at_origin() {
    // ratio at w = 0 is (1 − |φ(0)|²)^{−γ/2} with φ(0) = 1/3
    let phi = cayley_parabolic(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
    let one = AnalyticFunction::constant(c(1.0, 0.0));
    for space in spaces() {
        let v = kernel_inequality_check(&one, &phi, &space, &[c(0.0, 0.0)]).unwrap().unwrap();
        let want = (9.0f64 / 8.0).powf(space.gamma() / 2.0);
        assert!((v.lhs - want).abs() < 1e-12 && (v.rhs - 1.0).abs() < 1e-12);
    }
}

#[test]
fn kernel_inequality_needs_parabolic_non_auto() {
    let one = AnalyticFunction::constant(c(1.0, 0.0));
    let phi = MoebiusMap::dilation(c(0.5, 0.0)).unwrap();
    let r = kernel_inequality_check(&one, &phi, &SpaceSpec::hardy(), &[c(0.0, 0.0)]);
    assert!(matches!(r, Err(Error::HypothesisMismatch(_))));
}

#[test]
fn candidate_family_stays_undecided() {
    for cc in [c(0.5, 0.0), c(0.0, 0.3), c(-0.2, 0.1)] {
        let phi = hyperbolic_nonauto_form(cc).unwrap();
        for space in spaces() {
            let v = classify_unweighted(&phi, &space).unwrap();
            assert_eq!(v.outcome, Outcome::CandidateNotExcluded);
            assert!((v.candidate_c.unwrap() - cc).norm() < 1e-10);
        }
    }
}

#[test]
fn automorphism_without_origin_fixed_has_witness() {
    let phi = alpha_p(c(0.0, 0.4)).unwrap();
    let one = AnalyticFunction::constant(c(1.0, 0.0));
    let v = classify_unweighted(&phi, &SpaceSpec::hardy()).unwrap();
    assert_eq!(v.outcome, Outcome::NotHyponormal);
    assert_eq!(v.citation, Citation::OriginNotFixed);
    let w = witness_search(&one, &phi, &SpaceSpec::hardy(), &WitnessBudget::default()).unwrap().unwrap();
    assert!(w.gap() > 10.0 * w.tail);
}

#[test]
fn normal_form_norm_equals_weight_at_fixed_point() {
    let space = SpaceSpec::bergman(0.0).unwrap();
    let nf = normal_form(c(-0.2, 0.3), c(0.0, 0.5), c(0.8, -0.1), &space).unwrap();
    let m = build_weighted_composition(&nf.psi, &nf.phi.into(), &space, 256).unwrap();
    let est = operator_norm(&m.entries).unwrap().value;
    assert!((est - c(0.8, -0.1).norm()).abs() < 1e-4, "{est}");
    let r = spectral_radius_closed(&nf.psi, &nf.phi, &space).unwrap();
    assert!((r.value - c(0.8, -0.1).norm()).abs() < 1e-10);
}

#[test]
fn normal_form_rejects_bad_parameters() {
    let h = SpaceSpec::hardy();
    assert!(normal_form(c(1.0, 0.0), c(0.3, 0.0), c(1.0, 0.0), &h).is_err());
    assert!(normal_form(c(0.3, 0.0), c(0.0, 0.0), c(1.0, 0.0), &h).is_err());
    assert!(normal_form(c(0.3, 0.0), c(1.0, 0.0), c(1.0, 0.0), &h).is_err());
}

#[test]
fn parabolic_report() {
    let psi = AnalyticFunction::polynomial(Polynomial::from_real(&[0.5, -0.25])).unwrap();
    let phi = cayley_parabolic(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
    let rep = spectral_report(&psi, &phi, &SpaceSpec::hardy()).unwrap();
    assert!((rep.r.unwrap().value - 0.25).abs() < 1e-12);
    assert!((rep.r_e.unwrap().value - 0.25).abs() < 1e-9);
    assert!(rep.norm_lower.value <= rep.norm_upper.unwrap().value);
    assert!(rep.conditional_bounds.is_none());
}

#[test]
fn origin_fixing_hyperbolic_bounds() {
    // z/(2 − z) fixes 0 and 1 with φ′(1) = 2
    let phi = MoebiusMap::<f64>::from_real(1.0, 0.0, -1.0, 2.0).unwrap();
    let psi = AnalyticFunction::polynomial(Polynomial::from_real(&[1.0, 0.5])).unwrap();
    let b = norm_bounds(&psi, &phi, &SpaceSpec::hardy()).unwrap();
    assert!((b.lower - 1.5 / 2f64.sqrt()).abs() < 1e-9);
    assert!((b.upper - 1.5).abs() < 1e-9);
}

#[test]
fn single_precision_classification() {
    let phi = MoebiusMap::<f32>::from_real(1.0, 1.0, -1.0, 3.0).unwrap();
    let v = classify_unweighted(&phi, &SpaceSpec::hardy()).unwrap();
    assert_eq!(v.outcome, Outcome::NotHyponormal);
    let dil = MoebiusMap::<f32>::dilation(num_complex::Complex::new(0.5, 0.0)).unwrap();
    assert_eq!(classify_unweighted(&dil, &SpaceSpec::hardy()).unwrap().outcome, Outcome::Normal);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]
    #[test]
    fn dilations_are_normal(lam in point(1.0)) {
        let phi = MoebiusMap::dilation(lam).unwrap();
        for space in spaces() {
            prop_assert_eq!(classify_unweighted(&phi, &space).unwrap().outcome, Outcome::Normal);
        }
    }

    #[test]
    fn origin_not_fixed_is_excluded(p in point(0.9), lam in 0.1..1.0f64) {
        prop_assume!(p.norm() > 1e-3);
        let phi = MoebiusMap::dilation(c(lam, 0.0)).unwrap().compose(&alpha_p(p).unwrap()).unwrap();
        let v = classify_unweighted(&phi, &SpaceSpec::hardy()).unwrap();
        prop_assert_eq!(v.outcome, Outcome::NotHyponormal);
        prop_assert_eq!(v.citation, Citation::OriginNotFixed);
    }

    #[test]
    fn conjugated_weight_at_origin_is_weight_at_p(p in point(0.6), d in point(0.6), val in point(2.0)) {
        prop_assume!(d.norm() > 1e-3 && val.norm() > 1e-3);
        let space = SpaceSpec::hardy();
        let nf = normal_form(p, d, val, &space).unwrap();
        let (q, phi_t) = conjugate_to_origin(&nf.psi, &nf.phi, p, &space).unwrap();
        prop_assert!((q.evaluate(c(0.0, 0.0)).unwrap() - val).norm() < 1e-9);
        prop_assert!(phi_t.eval(c(0.0, 0.0)).unwrap().norm() < 1e-10);
    }

    #[test]
    fn normal_forms_classify_normal(p in point(0.6), d in point(0.6), val in point(2.0), bergman in any::<bool>()) {
        prop_assume!(d.norm() > 1e-3 && val.norm() > 1e-3);
        let space = if bergman { SpaceSpec::bergman(0.0).unwrap() } else { SpaceSpec::hardy() };
        let nf = normal_form(p, d, val, &space).unwrap();
        let v = classify_weighted(&nf.psi, &nf.phi, &space, &no_numeric()).unwrap();
        prop_assert_eq!(v.outcome, Outcome::Normal);
    }
}
