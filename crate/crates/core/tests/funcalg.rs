use hypocomp::funcalg::{expand_rational, series_mul};
use hypocomp::{AnalyticFunction, MoebiusMap, Polynomial, RationalFunction, C64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn small_point() -> impl Strategy<Value = C64> {
    (0.0..0.8f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

#[test]
fn kernel_expansion_matches_binomial_series() {
    let w = c(0.3, -0.5);
    for gamma in [1.0, 2.0, 2.5, 3.7] {
        let s = AnalyticFunction::kernel(w, gamma).unwrap().expand(60).unwrap();
        // (1 − w̄z)^(−γ) = Σ (γ)_n/n! w̄ⁿ zⁿ
        let mut want = c(1.0, 0.0);
        for n in 0..60 {
            if n > 0 {
                want *= w.conj() * ((n as f64 - 1.0 + gamma) / n as f64);
            }
            assert!((s.coeff(n) - want).norm() < 1e-12 * (1.0 + want.norm()), "γ = {gamma}, n = {n}");
        }
    }
}

#[test]
fn geometric_series() {
    let r = RationalFunction::<f64>::from_real(&[1.0], &[1.0, -0.5]).unwrap();
    let s = expand_rational(&r, 40).unwrap();
    for n in 0..40 {
        assert!((s.coeff(n).re - 0.5f64.powi(n as i32)).abs() < 1e-15);
    }
}

#[test]
fn series_product_of_known_expansions() {
    let a = expand_rational(&RationalFunction::<f64>::from_real(&[1.0], &[1.0, -1.0]).unwrap(), 30).unwrap();
    let sq = series_mul(&a, &a).unwrap();
    for n in 0..30 {
        assert!((sq.coeff(n).re - (n as f64 + 1.0)).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn product_evaluates_pointwise(a in small_point(), b in small_point(), z in small_point()) {
        let f = AnalyticFunction::kernel(a, 2.0).unwrap();
        let g = AnalyticFunction::polynomial(Polynomial::new(vec![c(1.0, 0.0), b])).unwrap();
        let fg = f.mul(&g);
        let want = f.evaluate(z).unwrap() * g.evaluate(z).unwrap();
        prop_assert!((fg.evaluate(z).unwrap() - want).norm() < 1e-10 * (1.0 + want.norm()));
    }

    #[test]
    fn moebius_composition_evaluates_pointwise(a in small_point(), lam in 0.1..0.9f64, z in small_point(), gamma in 1.0..4.0f64) {
        let f = AnalyticFunction::kernel(a, gamma).unwrap();
        let phi = MoebiusMap::new(c(lam, 0.0), c(0.1, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let fc = f.compose_with_moebius(&phi).unwrap();
        let want = f.evaluate(phi.eval(z).unwrap()).unwrap();
        prop_assert!((fc.evaluate(z).unwrap() - want).norm() < 1e-10 * (1.0 + want.norm()));
    }

    #[test]
    fn partial_sums_converge_inside(a in small_point(), z in small_point()) {
        let f = AnalyticFunction::kernel(a * 0.5, 2.0).unwrap();
        let s = f.expand(200).unwrap();
        let want = f.evaluate(z).unwrap();
        prop_assert!((s.partial_sum(z) - want).norm() < 1e-9 * (1.0 + want.norm()));
    }
}
