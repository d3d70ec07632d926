use proptest::prelude::*;

use lbh_core::diffusion::{energy_identity_defect, solve_limit, DiffusionProblem};
use lbh_core::grid::SlabGrid;
use lbh_core::harness::fit_rate;
use lbh_core::sobolev::{sobolev_norm, NormMode, PeriodicSamples, SobolevOrder};
use lbh_core::velocity::{QuadratureFamily, VelocityQuadrature};

fn quadrature() -> impl Strategy<Value = VelocityQuadrature> {
    (1usize..=12, prop_oneof![Just(QuadratureFamily::GaussLegendreUniform), Just(QuadratureFamily::UniformMidpoint)])
        .prop_map(|(half, fam)| VelocityQuadrature::build(fam, 2 * half).unwrap())
}

fn quadrature_and_samples() -> impl Strategy<Value = (VelocityQuadrature, Vec<f64>, Vec<f64>)> {
    quadrature().prop_flat_map(|q| {
        let n = q.len();
        (
            Just(q),
            prop::collection::vec(-10.0f64..10.0, n),
            prop::collection::vec(-10.0f64..10.0, n),
        )
    })
}

proptest! {
    #[test]
    fn quadrature_invariants(q in quadrature()) {
        let w: f64 = q.weights().iter().sum();
        prop_assert!((w - 1.0).abs() < 1e-14);
        prop_assert_eq!(q.moment(1), 0.0);
        let n = q.len();
        for j in 0..n {
            prop_assert_eq!(q.nodes()[j], -q.nodes()[n - 1 - j]);
            prop_assert_eq!(q.weights()[j], q.weights()[n - 1 - j]);
            prop_assert!(q.nodes()[j] != 0.0 && q.nodes()[j].abs() < 1.0);
        }
    }

    #[test]
    fn collision_identities((q, phi, psi) in quadrature_and_samples()) {
        let d = q.dirichlet_form(&phi).unwrap();
        prop_assert!(d >= 0.0);
        let scale = q.inner(&phi, &phi).max(1e-300);
        prop_assert!((d - q.dirichlet_form_double_sum(&phi).unwrap()).abs() <= 1e-12 * scale);
        prop_assert!(q.self_adjointness_defect(&phi, &psi).unwrap() <= 1e-13 * scale.max(q.inner(&psi, &psi)).max(1.0));

        let l1 = q.apply_collision(&phi).unwrap();
        let l2 = q.apply_collision(&l1).unwrap();
        for (a, b) in l1.iter().zip(&l2) {
            prop_assert!((a - b).abs() <= 1e-13 * scale.sqrt().max(1.0));
        }
        prop_assert!(q.average(&l1).unwrap().abs() <= 1e-13 * scale.sqrt().max(1.0));
    }

    #[test]
    fn sobolev_norms_are_monotone_in_order(values in prop::collection::vec(-5.0f64..5.0, 64..200)) {
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let centred: Vec<f64> = values.iter().map(|v| v - mean).collect();
        let s = PeriodicSamples::uniform(2.0, centred).unwrap();
        let m1 = sobolev_norm(&s, SobolevOrder::MinusOne, NormMode::Fourier).value;
        let mh = sobolev_norm(&s, SobolevOrder::MinusHalf, NormMode::Fourier).value;
        let l2 = s.fourier_norm(0.0, false);
        prop_assert!(m1 <= mh * (1.0 + 1e-12));
        prop_assert!(mh <= l2 * (1.0 + 1e-12));
        // the interpolated value sits between the same neighbours
        let dual = sobolev_norm(&s, SobolevOrder::MinusHalf, NormMode::DualityInterpolation).value;
        prop_assert!(m1 <= dual * (1.0 + 1e-12) && dual <= l2 * (1.0 + 1e-12));
    }

    #[test]
    fn modes_agree_on_single_frequencies(k in 1u32..60, amp in 0.1f64..10.0, phase in 0.0f64..6.3, length in 0.5f64..10.0) {
        let omega = 2.0 * std::f64::consts::PI * k as f64 / length;
        let s = PeriodicSamples::sample(length, 256, |x| amp * (omega * x + phase).sin()).unwrap();
        for order in [SobolevOrder::MinusHalf, SobolevOrder::Half] {
            let f = sobolev_norm(&s, order, NormMode::Fourier).value;
            let d = sobolev_norm(&s, order, NormMode::DualityInterpolation).value;
            prop_assert!((f - d).abs() <= 0.15 * f);
        }
    }

    #[test]
    fn rate_is_invariant_under_error_scaling(p in 0.1f64..3.0, c in 1e-3f64..1e3) {
        let pairs: Vec<(f64, f64)> = [0.2, 0.1, 0.05, 0.025].iter().map(|&e: &f64| (e, c * e.powf(p))).collect();
        prop_assert!((fit_rate(&pairs).unwrap() - p).abs() < 1e-10);
    }

    #[test]
    fn diffusion_energy_identity_and_positivity(
        kappa in prop::collection::vec(0.01f64..2.0, 33),
        g in prop::collection::vec(0.0f64..3.0, 32),
    ) {
        let grid = SlabGrid::new(1.0, 32).unwrap();
        let p = DiffusionProblem::new(grid, kappa, g).unwrap();
        let s = solve_limit(&p).unwrap();
        prop_assert!(energy_identity_defect(&p, &s) <= 1e-12);
        prop_assert!(s.rho.iter().all(|&r| r >= 0.0));
    }
}
