use std::f64::consts::PI;
use std::fs;

use lbh_core::harness::report::write_report;
use lbh_core::harness::{fit_effective_coefficient, run_sweep, ComparisonMode, SourceSpec, SweepConfig};
use lbh_core::kinetic::solve_steady;
use lbh_core::scattering::ScatteringProfile;

fn sinusoidal_config() -> SweepConfig {
    SweepConfig::new(ScatteringProfile::sinusoidal(2.0, 1.0, 2.0 * PI).unwrap())
}

#[test]
fn constant_sweep_converges_at_first_order() {
    let r = run_sweep(&SweepConfig::new(ScatteringProfile::constant(2.0).unwrap())).unwrap();
    let errs: Vec<f64> = r.rows.iter().map(|row| row.l2_err).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(r.fitted_rate.unwrap() >= 0.5);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn weak_errors_decrease() {
    let r = run_sweep(&sinusoidal_config()).unwrap();
    let decreasing = |s: &[f64]| s.windows(2).all(|w| w[1] < w[0]);
    // odd m: test functions even about x = 0
    for m in (1..=8).step_by(2) {
        let series: Vec<f64> = r.rows.iter().map(|row| row.weak_err[m - 1]).collect();
        assert!(decreasing(&series), "m = {m}: {series:?}");
    }
    // even m see only the odd part of the error, whose phase follows l / eps;
    // the envelope over all m still decreases
    let envelope: Vec<f64> = r
        .rows
        .iter()
        .map(|row| row.weak_err.iter().copied().fold(0.0, f64::max))
        .collect();
    assert!(decreasing(&envelope), "{envelope:?}");
    let last = r.rows.last().unwrap();
    assert!(last.weak_err.iter().all(|&w| w < 0.01));
}

#[cfg(feature = "parallel")]
#[test]
fn sweep_is_reproducible_across_thread_counts() {
    let mut config = sinusoidal_config();
    config.eps = vec![0.2, 0.1, 0.05];
    let a = run_sweep(&config).unwrap();
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run_sweep(&config).unwrap());
    assert_eq!(a, b);
    for (x, y) in a.rows.iter().zip(&b.rows) {
        assert_eq!(x.l2_err.to_bits(), y.l2_err.to_bits());
        assert_eq!(x.s_hat.map(f64::to_bits), y.s_hat.map(f64::to_bits));
    }
}

#[test]
fn effective_coefficient_is_scale_invariant() {
    let mut config = sinusoidal_config();
    config.source = SourceSpec::GaussianBump { amplitude: 1.0, width: 0.08 };
    let p1 = config.kinetic_problem(0.1).unwrap();
    config.source = SourceSpec::GaussianBump { amplitude: 7.5, width: 0.08 };
    let p2 = config.kinetic_problem(0.1).unwrap();
    let fit = |p: &lbh_core::kinetic::KineticProblem| {
        let sol = solve_steady(p, &config.solver).unwrap();
        fit_effective_coefficient(&sol.density(), p.source(), p.grid(), 1.0 / 3.0, (0.5, 6.0))
            .unwrap()
            .s_hat
    };
    let (s1, s2) = (fit(&p1), fit(&p2));
    assert!((s1 - s2).abs() <= 1e-6 * s1, "{s1} vs {s2}");
}

#[test]
fn two_phase_coefficient_is_the_cell_average() {
    let mut config = SweepConfig::new(ScatteringProfile::two_phase([1.0, 3.0], [0.5, 0.5], 2.0 * PI).unwrap());
    config.source = SourceSpec::GaussianBump { amplitude: 1.0, width: 0.08 };
    config.eps = vec![0.1, 0.05, 0.025];
    let r = run_sweep(&config).unwrap();
    let s = r.s_hat().unwrap();
    assert!((s - 2.0).abs() < 0.1 && (s - 1.5).abs() > 0.3, "s_hat {s}");
    assert!((r.sigma_star - 2.0).abs() < 1e-9);
    assert!((r.sigma_harm - 1.5).abs() < 0.01);
}

#[test]
fn pointwise_mode_with_constant_bar_matches_weak_star() {
    let mut config = sinusoidal_config();
    config.eps = vec![0.2, 0.1, 0.05];
    config.comparison = ComparisonMode::Both;
    let r = run_sweep(&config).unwrap();
    for row in &r.rows {
        let pw = row.l2_err_pointwise.unwrap();
        assert!((pw - row.l2_err).abs() < 1e-12);
    }
}

#[test]
fn beta_three_reports_out_of_hypothesis_without_aborting() {
    let mut config = sinusoidal_config();
    config.beta = 3.0;
    config.eps = vec![0.4, 0.3, 0.2];
    let r = run_sweep(&config).unwrap();
    let g = r.g_eps_check.unwrap();
    assert!(g.note.is_some());
}

#[test]
fn report_files_have_the_documented_layout() {
    let mut config = sinusoidal_config();
    config.eps = vec![0.2, 0.1, 0.05];
    config.test_functions = 3;
    config.resolution.max_cells = 1000;
    let r = run_sweep(&config).unwrap();
    assert_eq!(r.exit_code(), 2, "eps = 0.05 needs 3200 cells");
    let dir = tempfile::tempdir().unwrap();
    write_report(dir.path(), &r).unwrap();

    let text = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "eps,beta,nx,l2_err,weak_err_1,weak_err_2,weak_err_3,rate_so_far,s_hat,sigma_star,sigma_harm,checks_passed"
    );
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with(",true"));
    assert!(lines[3].starts_with("5.0000000000000003e-2,") && lines[3].ends_with(",skipped"));

    let sol = fs::read_to_string(dir.path().join("solutions").join("eps_0.1.csv")).unwrap();
    assert!(sol.starts_with("x,density,flux,second_moment,zeta,g_eps,rho_limit\n"));
    assert_eq!(sol.lines().count(), 1 + 800);
    assert!(!dir.path().join("solutions").join("eps_0.05.csv").exists());
}

#[test]
fn config_file_with_tables() {
    let dir = tempfile::tempdir().unwrap();
    let table: String = (0..=64)
        .map(|k| {
            let y = k as f64 / 64.0;
            format!("{y},{}\n", 2.0 + 0.5 * (2.0 * PI * y).cos())
        })
        .collect();
    fs::write(dir.path().join("sigma.csv"), format!("y,sigma\n{table}")).unwrap();
    fs::write(dir.path().join("g.csv"), "x,g\n-1,0\n0,1\n1,0\n").unwrap();
    fs::write(
        dir.path().join("sweep.cfg"),
        "sigma.kind = user-table\nsigma.table_path = sigma.csv\nsource.kind = user-table\n\
         source.table_path = g.csv\neps = 0.3, 0.2, 0.1\nbeta = 0.5\n",
    )
    .unwrap();
    let config = SweepConfig::from_file(&dir.path().join("sweep.cfg")).unwrap();
    assert_eq!(config.profile.period(), 1.0);
    let r = run_sweep(&config).unwrap();
    assert_eq!(r.rows.len(), 3);
    assert!((r.sigma_star - 2.0).abs() < 1e-3);
    assert_eq!(r.exit_code(), 0);
}
