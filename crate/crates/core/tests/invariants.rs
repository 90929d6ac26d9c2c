use mlumbral::fracpde::{DiffusionOptions, DRIFT_TERM_CAP};
use mlumbral::fracstats::sample_counts_streams;
use mlumbral::umbral::{ml_binomial, ml_compose_power};
use mlumbral::*;
use proptest::prelude::*;

fn ml(alpha: f64, x: f64) -> f64 {
    ml_e(MLParams::new(alpha, 1.0).unwrap(), x).unwrap().value
}

#[test]
fn evolution_composition_per_mode() {
    let t: f64 = 0.5;
    for alpha in [0.5, 1.0] {
        for k in [0.5, 1.0, 2.0] {
            let z = -t.powf(alpha) * k * k;
            let product = ml(alpha, z) * ml(alpha, z);
            let s = ml_semigroup_sum(z, z, alpha, 1.0, 80).unwrap();
            if alpha == 0.5 && k == 2.0 {
                // |z| ≈ 2.83: eighty blocks are not enough at α = 1/2, and
                // the sum says so. Two hundred are.
                assert!(!s.converged);
                let s = ml_semigroup_sum(z, z, alpha, 1.0, 200).unwrap();
                assert!(s.converged);
                assert!((s.value - product).abs() < 1e-6);
            } else {
                assert!(s.converged, "alpha = {alpha}, k = {k}");
                assert!((s.value - product).abs() < 1e-6, "alpha = {alpha}, k = {k}");
            }
        }
    }
}

#[test]
fn drift_agrees_with_weyl_form() {
    let grid = Grid::new(-12.0, 12.0, 600).unwrap();
    for (a, b, t) in [(1.0, 0.5, 0.4), (2.0, 1.0, 0.2), (0.5, 0.25, 1.0), (-1.0, 0.3, 0.7)] {
        let s = solve_drift_pde(a, b, 1.0, t, &grid).unwrap();
        assert!(s.terms_used < DRIFT_TERM_CAP);
        let weyl = GridFunction::from_fn(grid, |x| {
            (a * x * t - a * b * t * t / 2.0).exp() * (-(x - b * t).powi(2)).exp()
        })
        .unwrap();
        assert!(s.solution.sup_distance(&weyl) < 1e-8, "({a}, {b}, {t})");
    }
}

#[test]
fn mandel_parameter_has_no_sign_change_below_one() {
    // The closed form gives Q/X ∝ 6/Γ(4α+1) - 1/Γ(2α+1)², positive on
    // (1/2, 1); the scan finds no sub-Poissonian region there.
    let qs: Vec<f64> = (1..=50)
        .map(|i| {
            let alpha = 0.5 + 0.5 * i as f64 / 50.0;
            schrodinger_moments(alpha, 1.0).unwrap().mandel_q
        })
        .collect();
    assert!(qs[..49].iter().all(|&q| q > 0.0));
    assert!(qs[49].abs() < 1e-12);
    // The ordering is monotone: Q shrinks towards the Poissonian end.
    assert!(qs.windows(2).all(|w| w[0] > w[1]));
}

#[test]
fn normalization_over_parameter_grids() {
    for alpha in [0.6, 0.8, 1.0] {
        for v in [0.25, 1.0, 4.0] {
            for variant in [Variant::Schrodinger, Variant::Laskin] {
                let d = CountDistribution::new(variant, alpha, v).unwrap();
                assert!(d.tail_converged());
                assert!((d.total_mass() - 1.0).abs() < 1e-6, "{variant:?} {alpha} {v}");
            }
        }
    }
}

#[test]
fn experimental_diffusion_regime() {
    let grid = Grid::new(-10.0, 10.0, 256).unwrap();
    let f = GridFunction::from_fn(grid, |x| (-x * x).exp()).unwrap();
    let opts = DiffusionOptions {
        experimental: true,
        ..Default::default()
    };
    let u = fracpde::solve_fractional_diffusion_with(&f, 3.5, 0.6, &opts).unwrap();
    assert!((u.integral() - f.integral()).abs() < 1e-8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn binomial_symmetry(n in 0u32..60, r in 0u32..60, alpha in 0.1f64..2.0, beta in 0.2f64..2.0) {
        prop_assume!(r <= n);
        let a = ml_binomial(n, r, alpha, beta).unwrap();
        let b = ml_binomial(n, n - r, alpha, beta).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn composition_commutes(x in -2.0f64..2.0, y in -2.0f64..2.0, n in 0u32..30, alpha in 0.3f64..1.5) {
        let a = ml_compose_power(x, y, n, alpha, 1.0).unwrap();
        let b = ml_compose_power(y, x, n, alpha, 1.0).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn borel_agrees_with_series(alpha in 0.5f64..=1.0, x in -6.0f64..5.0, order in prop::sample::select(vec![64usize, 128])) {
        let rule = gauss_laguerre_rule(order).unwrap();
        let p = MLParams::new(alpha, 1.0).unwrap();
        let b = ml_via_borel(p, x, &rule).unwrap();
        let e = ml(alpha, x);
        prop_assert!((b - e).abs() < 1e-8 * e.abs().max(1.0));
    }

    #[test]
    fn borel_fails_cleanly_far_out(alpha in 0.2f64..0.4, x in -8.0f64..-7.0) {
        let rule = gauss_laguerre_rule(128).unwrap();
        let p = MLParams::new(alpha, 1.0).unwrap();
        let err = ml_via_borel(p, x, &rule).unwrap_err();
        prop_assert!(err.is_convergence_failure());
    }

    #[test]
    fn negative_axis_meets_tolerance(alpha in 0.3f64..1.8, x in 5.0f64..200.0) {
        let p = MLParams::new(alpha, 1.0).unwrap();
        let r = ml_e(p, -x).unwrap();
        prop_assert!(r.within(1e-12));
        if alpha <= 1.0 {
            // Complete monotonicity keeps E_α(-x) in (0, 1).
            prop_assert!(r.value > 0.0 && r.value < 1.0);
        }
    }

    #[test]
    fn probabilities_lie_in_unit_interval(m in 0u32..30, alpha in 0.55f64..1.0, x in 0.0f64..6.0) {
        let p = p_m_schrodinger(m, alpha, x).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
        let q = p_m_laskin(m, alpha, x).unwrap();
        prop_assert!((0.0..=1.0).contains(&q));
    }

    #[test]
    fn sampling_streams_are_reproducible(seed in any::<u64>()) {
        let d = CountDistribution::new(Variant::Laskin, 0.9, 2.0).unwrap();
        let a = sample_counts(&d, seed, 500).unwrap();
        let s = sample_counts_streams(&d, &[seed, seed ^ 1], 500, Execution::Parallel).unwrap();
        prop_assert_eq!(&a, &s[0]);
        prop_assert!(a.iter().all(|&m| (m as usize) <= d.truncation_m()));
    }
}
