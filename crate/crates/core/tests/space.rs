use hypocomp::space::inner_product;
use hypocomp::{SpaceSpec, C64};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = C64> {
    (0.0..0.7f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

#[test]
fn bergman_weights_match_gamma_ratio() {
    for alpha in [0.0, 0.5, 1.0, 3.0] {
        let s = SpaceSpec::bergman(alpha).unwrap();
        let w = s.weights(50);
        // β(n)² = n! Γ(α+2) / Γ(n+α+2) as a running product
        let mut b2 = 1.0f64;
        for n in 0..50 {
            if n > 0 {
                b2 *= n as f64 / (n as f64 + alpha + 1.0);
            }
            assert!((w.beta[n] - b2.sqrt()).abs() < 1e-13, "α = {alpha}, n = {n}");
            assert!((s.beta(n) - b2.sqrt()).abs() < 1e-12);
            assert!(w.beta[n] <= 1.0);
        }
    }
}

#[test]
fn unweighted_bergman_has_gamma_two() {
    assert_eq!(SpaceSpec::<f64>::bergman(0.0).unwrap().gamma(), 2.0);
    assert_eq!(SpaceSpec::<f64>::hardy().gamma(), 1.0);
    assert!(SpaceSpec::<f64>::bergman(-1.0).is_err());
}

proptest! {
    #[test]
    fn truncated_kernels_reproduce_closed_inner_product(a in point(), b in point(), alpha in 0.0..2.0f64) {
        for s in [SpaceSpec::hardy(), SpaceSpec::bergman(alpha).unwrap()] {
            let ka = s.kernel(a, 300).unwrap();
            let kb = s.kernel(b, 300).unwrap();
            let got = inner_product(&ka, &kb).unwrap();
            // ⟨K_a, K_b⟩ = K_a(b)
            let want = (C64::new(1.0, 0.0) - a.conj() * b).powf(-s.gamma());
            prop_assert!((got - want).norm() < 1e-9 * want.norm(), "{} vs {}", got, want);
            prop_assert!((s.kernel_inner(a, b).unwrap() - want).norm() < 1e-12 * want.norm());
        }
    }
}
