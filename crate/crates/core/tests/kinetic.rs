use lbh_core::estimates::{check_crucial, check_entropy};
use lbh_core::grid::SlabGrid;
use lbh_core::harness::SweepConfig;
use lbh_core::kinetic::{solve_steady, KineticProblem, KineticSolution, SolverOptions};
use lbh_core::scattering::{ScatteringField, ScatteringProfile};
use lbh_core::velocity::VelocityQuadrature;

fn closed_form(x: f64) -> f64 {
    1.0 - (6f64.sqrt() * x).cosh() / 6f64.sqrt().cosh()
}

fn reference(eps: f64) -> KineticSolution {
    let config = SweepConfig::new(ScatteringProfile::constant(2.0).unwrap());
    let problem = config.kinetic_problem(eps).unwrap();
    solve_steady(&problem, &config.solver).unwrap()
}

fn constant_on(cells: usize, eps: f64) -> KineticSolution {
    let grid = SlabGrid::new(1.0, cells).unwrap();
    let field = ScatteringField::new(ScatteringProfile::constant(2.0).unwrap(), eps, 1.0).unwrap();
    let p = KineticProblem::new(grid, VelocityQuadrature::default_uniform(), field, vec![1.0; cells]).unwrap();
    solve_steady(&p, &SolverOptions::default()).unwrap()
}

fn l2_diff(grid: &SlabGrid, a: &[f64], b: &[f64]) -> f64 {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    grid.l2_norm(&d)
}

#[test]
fn constant_sigma_density_matches_closed_form() {
    let sol = reference(0.05);
    let grid = sol.problem().grid();
    let exact: Vec<f64> = grid.centers().iter().map(|&x| closed_form(x)).collect();
    let err = l2_diff(grid, &sol.density(), &exact);
    assert!(err <= 0.1, "L2 error {err}");
}

#[test]
fn even_data_gives_reflection_symmetry() {
    let profile = ScatteringProfile::two_phase([1.0, 3.0], [0.5, 0.5], 1.0).unwrap();
    let field = ScatteringField::new(profile, 0.1, 1.0).unwrap();
    let grid = SlabGrid::new(1.0, 640).unwrap();
    let g: Vec<f64> = grid.centers().iter().map(|x| (-x * x / 0.08).exp()).collect();
    let p = KineticProblem::new(grid, VelocityQuadrature::default_uniform(), field, g).unwrap();
    let opts = SolverOptions {
        tol: 1e-13,
        ..SolverOptions::default()
    };
    let sol = solve_steady(&p, &opts).unwrap();
    let (n, nv) = (640, 16);
    for j in 0..nv {
        for i in 0..n {
            let d = (sol.value(i, j) - sol.value(n - 1 - i, nv - 1 - j)).abs();
            assert!(d <= 1e-10, "cell {i} ordinate {j}: {d}");
        }
    }
}

#[test]
fn identical_inputs_give_bitwise_identical_output() {
    let profile = ScatteringProfile::sinusoidal(2.0, 1.0, 2.0 * std::f64::consts::PI).unwrap();
    let mut config = SweepConfig::new(profile);
    config.beta = 0.5;
    let p = config.kinetic_problem(0.1).unwrap();
    let a = solve_steady(&p, &config.solver).unwrap();
    let b = solve_steady(&p.clone(), &config.solver).unwrap();
    assert_eq!(a.stats(), b.stats());
    assert!(a.values().iter().zip(b.values()).all(|(x, y)| x.to_bits() == y.to_bits()));
}

#[test]
fn flux_bound_and_entropy_hold_across_eps() {
    for eps in [0.2, 0.1, 0.05] {
        let sol = reference(eps);
        let c = check_crucial(&sol);
        assert!(c.pass, "eps {eps}: {c:?}");
        assert!(check_entropy(&sol).pass);
    }
}

#[test]
fn continuity_residual_is_first_order() {
    let coarse = constant_on(200, 0.2);
    let fine = constant_on(400, 0.2);
    let rc = coarse.problem().grid().l2_norm(&coarse.continuity_residual());
    let rf = fine.problem().grid().l2_norm(&fine.continuity_residual());
    let ratio = rc / rf;
    assert!((1.6..=2.5).contains(&ratio), "ratio {ratio} ({rc} vs {rf})");
}

#[test]
fn continuity_residual_small_at_default_resolution() {
    for eps in [0.2, 0.1, 0.05, 0.025] {
        let sol = reference(eps);
        let grid = sol.problem().grid();
        let r = grid.l2_norm(&sol.continuity_residual());
        assert!(r <= 0.05 * grid.l2_norm(sol.problem().source()), "eps {eps}: {r}");
    }
}

#[test]
fn zeta_derivative_matches_g_eps() {
    for eps in [0.2, 0.1, 0.05] {
        let sol = reference(eps);
        let grid = sol.problem().grid();
        let minus_dzeta: Vec<f64> = grid.derivative(&sol.zeta()).iter().map(|d| -d).collect();
        let defect = l2_diff(grid, &minus_dzeta, &sol.g_eps());
        let g = grid.l2_norm(sol.problem().source());
        assert!(defect <= 0.05 * g, "eps {eps}: {defect}");
    }
}

#[test]
fn zeta_follows_density_gradient() {
    // leading order: zeta = (<v^2> / sigma) d<f>/dx, away from the boundary layers
    let mut prev = f64::INFINITY;
    for eps in [0.1, 0.05, 0.025] {
        let sol = reference(eps);
        let grid = sol.problem().grid();
        let zeta = sol.zeta();
        let drho = grid.derivative(&sol.density());
        let interior: Vec<usize> = (0..grid.cells()).filter(|&i| grid.centers()[i].abs() < 0.8).collect();
        let err = interior
            .iter()
            .map(|&i| (zeta[i] - drho[i] / 6.0).abs())
            .fold(0.0, f64::max);
        assert!(err < 0.5 * eps, "eps {eps}: {err}");
        assert!(err < prev);
        prev = err;
    }
}

#[test]
fn zero_source_gives_zero_everywhere() {
    let grid = SlabGrid::new(1.0, 64).unwrap();
    let field = ScatteringField::new(ScatteringProfile::constant(1.0).unwrap(), 0.3, 1.0).unwrap();
    let p = KineticProblem::new(grid, VelocityQuadrature::default_uniform(), field, vec![0.0; 64]).unwrap();
    let sol = solve_steady(&p, &SolverOptions::default()).unwrap();
    assert!(sol.values().iter().all(|&v| v == 0.0));
    assert!(sol.zeta().iter().chain(&sol.g_eps()).all(|&v| v == 0.0));
}

#[test]
fn grid_refinement_changes_density_by_order_h() {
    let a = constant_on(100, 0.3);
    let b = constant_on(200, 0.3);
    let c = constant_on(400, 0.3);
    // compare on the coarse grid by averaging fine-cell pairs
    let restrict = |fine: &[f64]| -> Vec<f64> { fine.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect() };
    let d1 = l2_diff(a.problem().grid(), &a.density(), &restrict(&b.density()));
    let d2 = l2_diff(b.problem().grid(), &b.density(), &restrict(&c.density()));
    let ratio = d1 / d2;
    assert!((1.6..=2.5).contains(&ratio), "ratio {ratio}");
}
