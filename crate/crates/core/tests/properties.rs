//! Property tests for the structural invariants: normalization idempotence,
//! scaling covariance, capacity comparison, the Bernstein-Walsh inequality,
//! and the Szego modulus identity.

use num_complex::Complex64;
use proptest::prelude::*;

use logpot::equilibrium::{bernstein_walsh_check, capacity};
use logpot::measure::{log_potential, DiscretizedMeasure};
use logpot::opuc::{szego_eval, VerblunskyParams};
use logpot::setgeom::IntervalUnion;

fn interval_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec(
        (-3.0f64..3.0, 0.05f64..1.5).prop_map(|(a, len)| (a, a + len)),
        1..4,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalize_is_idempotent(raw in interval_strategy()) {
        let once = IntervalUnion::normalize(&raw).unwrap();
        let twice = IntervalUnion::normalize(once.intervals()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn lebesgue_scales_linearly(raw in interval_strategy(), lambda in 0.1f64..5.0, t in -2.0f64..2.0) {
        let e = IntervalUnion::normalize(&raw).unwrap();
        let f = e.scale_translate(lambda, t).unwrap();
        prop_assert!((f.lebesgue() - lambda * e.lebesgue()).abs() < 1e-10 * (1.0 + f.lebesgue()));
    }

    #[test]
    fn capacity_scaling_and_lower_bound(raw in interval_strategy(), lambda in 0.2f64..3.0) {
        let e = IntervalUnion::normalize(&raw).unwrap();
        let c = capacity(&e).unwrap();
        prop_assert!(c >= e.lebesgue() / 4.0 - 1e-9);
        let c2 = capacity(&e.scale_translate(lambda, 0.7).unwrap()).unwrap();
        prop_assert!((c2 - lambda * c).abs() <= 1e-8 * (1.0 + c2));
    }

    #[test]
    fn capacity_monotone_under_inclusion(raw in interval_strategy(), shrink in 0.05f64..0.45) {
        let outer = IntervalUnion::normalize(&raw).unwrap();
        let inner_iv: Vec<(f64, f64)> = outer
            .intervals()
            .iter()
            .map(|&(a, b)| {
                let len = b - a;
                (a + shrink * len, b - shrink * len)
            })
            .collect();
        let inner = IntervalUnion::normalize(&inner_iv).unwrap();
        prop_assert!(capacity(&inner).unwrap() <= capacity(&outer).unwrap() + 1e-9);
    }

    #[test]
    fn bernstein_walsh_holds_for_random_polynomials(
        coeffs in prop::collection::vec(-2.0f64..2.0, 2..9),
        raw in interval_strategy(),
        zs in prop::collection::vec((-4.0f64..4.0, -3.0f64..3.0), 1..6),
    ) {
        let mut coeffs = coeffs;
        if coeffs.last().copied() == Some(0.0) {
            *coeffs.last_mut().unwrap() = 1.0;
        }
        let e = IntervalUnion::normalize(&raw).unwrap();
        let points: Vec<Complex64> = zs.iter().map(|&(x, y)| Complex64::new(x, y)).collect();
        let rep = bernstein_walsh_check(&coeffs, &e, &points).unwrap();
        prop_assert!(rep.all_hold, "max ratio {}", rep.max_ratio);
    }

    #[test]
    fn fubini_symmetry_for_atoms(
        mu_atoms in prop::collection::vec((-3.0f64..3.0, 0.01f64..2.0), 1..6),
        nu_atoms in prop::collection::vec((-3.0f64..3.0, 0.01f64..2.0), 1..6),
    ) {
        let mu = DiscretizedMeasure::from_atoms(&mu_atoms).unwrap();
        let nu = DiscretizedMeasure::from_atoms(&nu_atoms).unwrap();
        // skip configurations where an atom of one measure sits on an atom
        // of the other (both sides are infinite there)
        for &x in mu.nodes() {
            for &y in nu.nodes() {
                prop_assume!((x - y).abs() > 1e-9);
            }
        }
        let lhs: f64 = nu
            .nodes()
            .iter()
            .zip(nu.weights())
            .map(|(&x, &w)| w * log_potential(&mu, Complex64::new(x, 0.0)))
            .sum();
        let rhs: f64 = mu
            .nodes()
            .iter()
            .zip(mu.weights())
            .map(|(&x, &w)| w * log_potential(&nu, Complex64::new(x, 0.0)))
            .sum();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn szego_modulus_identity_on_circle(
        alphas in prop::collection::vec((0.0f64..0.95, 0.0f64..std::f64::consts::TAU), 1..24),
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let v = VerblunskyParams::new(
            alphas
                .iter()
                .map(|&(r, t)| Complex64::from_polar(r, t))
                .collect(),
        )
        .unwrap();
        let n = v.len();
        let z = Complex64::from_polar(1.0, theta);
        let (phi, star) = szego_eval(&v, n, z);
        prop_assert!((phi.norm() - star.norm()).abs() <= 1e-9 * (1.0 + phi.norm()));
        // monic leading behavior: |Phi_n| <= prod (1 + |alpha_j|) on the circle
        let bound: f64 = v.alpha().iter().map(|a| 1.0 + a.norm()).product();
        prop_assert!(phi.norm() <= bound * (1.0 + 1e-9));
    }
}
