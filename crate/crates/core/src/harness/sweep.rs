//! One kinetic solve per `eps`, compared against the diffusion limit.

use std::f64::consts::PI;
use std::fmt;

use crate::diffusion::solve_limit;
use crate::error::{Error, Result};
use crate::estimates::{
    check_apriori, check_crucial, check_entropy, check_g_eps_uniform_norms, check_hdiv, check_zeta,
    flux_h_half_norm, EstimateReport,
};
use crate::grid::SlabGrid;
use crate::kinetic::{solve_steady, KineticSolution};
use crate::scattering::verify_hypotheses;

use super::config::{ComparisonMode, SweepConfig};
use super::fit::{fit_effective_coefficient, fit_rate};

/// Cell profiles of one sweep point, written to `solutions/eps_<value>.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointProfiles {
    pub x: Vec<f64>,
    pub density: Vec<f64>,
    pub flux: Vec<f64>,
    pub second_moment: Vec<f64>,
    pub zeta: Vec<f64>,
    pub g_eps: Vec<f64>,
    /// Limit density used for `l2_err` (weak-star unless the comparison
    /// mode is pointwise only).
    pub rho_limit: Vec<f64>,
    pub rho_pointwise: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub eps: f64,
    pub nx: usize,
    pub l2_err: f64,
    /// Only in `both` mode: the error against the pointwise limit.
    pub l2_err_pointwise: Option<f64>,
    pub weak_err: Vec<f64>,
    pub rate_so_far: Option<f64>,
    /// `None` when `g = 0`.
    pub s_hat: Option<f64>,
    pub checks: Vec<EstimateReport>,
    pub g_eps_norm: f64,
    pub flux_h_half: Option<f64>,
    pub iterations: usize,
    pub residual: f64,
    pub profiles: PointProfiles,
}

impl ReportRow {
    /// Checks that carry an out-of-hypothesis note do not count.
    pub fn checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || c.note.is_some())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkippedPoint {
    pub eps: f64,
    pub required_cells: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub beta: f64,
    pub comparison: ComparisonMode,
    pub test_functions: usize,
    pub sigma_star: f64,
    pub sigma_harm: f64,
    pub rows: Vec<ReportRow>,
    pub skipped: Vec<SkippedPoint>,
    pub g_eps_check: Option<EstimateReport>,
    /// Slope of `l2_err` against `eps`; needs at least three nonzero errors.
    pub fitted_rate: Option<f64>,
}

impl ConvergenceReport {
    fn empty(config: &SweepConfig) -> Self {
        Self {
            beta: config.beta,
            comparison: config.comparison,
            test_functions: config.test_functions,
            sigma_star: config.profile.weak_star_limit(),
            sigma_harm: config.profile.harmonic_mean(),
            rows: Vec::new(),
            skipped: Vec::new(),
            g_eps_check: None,
            fitted_rate: None,
        }
    }

    /// `s_hat` at the smallest solved `eps`.
    pub fn s_hat(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.s_hat)
    }

    pub fn all_checks_passed(&self) -> bool {
        self.rows.iter().all(ReportRow::checks_passed)
            && self.g_eps_check.as_ref().map_or(true, |c| c.pass || c.note.is_some())
    }

    /// 0 when every check passed and no point was skipped, 2 when points
    /// were skipped, 1 when a check failed.
    pub fn exit_code(&self) -> i32 {
        if !self.all_checks_passed() {
            1
        } else if !self.skipped.is_empty() {
            2
        } else {
            0
        }
    }
}

/// A sweep that stopped early, with everything computed before the failure.
#[derive(Debug)]
pub struct SweepAbort {
    pub report: ConvergenceReport,
    pub error: Error,
}

impl fmt::Display for SweepAbort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sweep aborted after {} points: {}", self.report.rows.len(), self.error)
    }
}

impl std::error::Error for SweepAbort {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

/// `sin(m pi (x + l) / (2 l))`, `m = 1..=count`, against cell values.
pub fn weak_errors(grid: &SlabGrid, diff: &[f64], count: usize) -> Vec<f64> {
    let l = grid.half_length();
    (1..=count)
        .map(|m| {
            let phi: Vec<f64> = grid
                .centers()
                .iter()
                .map(|&x| (m as f64 * PI * (x + l) / (2.0 * l)).sin())
                .collect();
            grid.inner(diff, &phi).abs()
        })
        .collect()
}

/// Every estimate check for a single solution.
pub fn run_checks(sol: &KineticSolution) -> Vec<EstimateReport> {
    let mut checks = vec![check_entropy(sol)];
    checks.extend(check_apriori(sol));
    checks.push(check_crucial(sol));
    checks.extend(check_hdiv(sol));
    checks.push(check_zeta(sol));
    checks
}

enum Point {
    Solved(Box<ReportRow>),
    Skipped(SkippedPoint),
}

fn solve_point(config: &SweepConfig, eps: f64) -> Result<Point> {
    let field = config.field(eps)?;
    let nx = config.resolution.cells(&field, config.half_length);
    if nx > config.resolution.max_cells {
        return Ok(Point::Skipped(SkippedPoint {
            eps,
            required_cells: nx,
        }));
    }
    let l = config.half_length;
    let audit = verify_hypotheses(&field, -l, l, (4 * nx).max(1000))?;
    if !audit.pass {
        return Err(Error::InvalidProblem(format!(
            "eps = {eps}: sigma_eps violates its declared bounds or slope at {} points \
             (range [{:.6}, {:.6}], max slope {:.4e} vs bound {:.4e})",
            audit.violations.len(),
            audit.min,
            audit.max,
            audit.max_slope,
            audit.slope_bound
        )));
    }

    let problem = config.kinetic_problem(eps)?;
    let grid = problem.grid().clone();
    let source = problem.source().to_vec();
    let sol = solve_steady(&problem, &config.solver)?;
    let density = sol.density();

    let weak_star = match config.comparison {
        ComparisonMode::PointwiseSigmaBar => None,
        _ => Some(solve_limit(&config.weak_star_problem(&grid)?)?.rho),
    };
    let pointwise = match config.comparison {
        ComparisonMode::WeakStar => None,
        _ => Some(solve_limit(&config.pointwise_problem(&grid)?)?.rho),
    };
    let error_of = |rho: &[f64]| -> Vec<f64> { density.iter().zip(rho).map(|(a, b)| a - b).collect() };
    let (rho_limit, rho_pointwise) = match (weak_star, pointwise) {
        (Some(w), p) => (w, p),
        (None, Some(p)) => (p, None),
        (None, None) => unreachable!("comparison mode selects at least one limit"),
    };
    let diff = error_of(&rho_limit);

    let s_hat = if grid.l2_norm(&source) > 0.0 {
        let a = config.profile.lower();
        let b = config.profile.upper();
        let fit = fit_effective_coefficient(
            &density,
            &source,
            &grid,
            config.quadrature.second_moment(),
            (0.5 * a, 2.0 * b),
        )?;
        Some(fit.s_hat)
    } else {
        None
    };

    let stats = sol.stats();
    let g_eps = sol.g_eps();
    let row = ReportRow {
        eps,
        nx,
        l2_err: grid.l2_norm(&diff),
        l2_err_pointwise: rho_pointwise.as_ref().map(|p| grid.l2_norm(&error_of(p))),
        weak_err: weak_errors(&grid, &diff, config.test_functions),
        rate_so_far: None,
        s_hat,
        checks: run_checks(&sol),
        g_eps_norm: grid.l2_norm(&g_eps),
        flux_h_half: flux_h_half_norm(&sol),
        iterations: stats.iterations,
        residual: stats.residual,
        profiles: PointProfiles {
            x: grid.centers().to_vec(),
            flux: sol.flux(),
            second_moment: sol.second_moment(),
            zeta: sol.zeta(),
            g_eps,
            density,
            rho_limit,
            rho_pointwise,
        },
    };
    Ok(Point::Solved(Box::new(row)))
}

#[cfg(feature = "parallel")]
fn solve_all(config: &SweepConfig) -> Vec<Result<Point>> {
    use rayon::prelude::*;
    config.eps.par_iter().map(|&e| solve_point(config, e)).collect()
}

#[cfg(not(feature = "parallel"))]
fn solve_all(config: &SweepConfig) -> Vec<Result<Point>> {
    config.eps.iter().map(|&e| solve_point(config, e)).collect()
}

fn rate_of(rows: &[ReportRow]) -> Option<f64> {
    let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.eps, r.l2_err)).collect();
    fit_rate(&pairs).ok()
}

/// Runs every `eps` of the sweep (in parallel with the `parallel` feature)
/// and assembles the report in `eps` order. The first failure, in that
/// order, aborts with the rows before it.
pub fn run_sweep(config: &SweepConfig) -> std::result::Result<ConvergenceReport, Box<SweepAbort>> {
    let mut report = ConvergenceReport::empty(config);
    if let Err(error) = config.validate() {
        return Err(Box::new(SweepAbort { report, error }));
    }
    for outcome in solve_all(config) {
        match outcome {
            Ok(Point::Skipped(s)) => report.skipped.push(s),
            Ok(Point::Solved(row)) => {
                report.rows.push(*row);
                let rate = rate_of(&report.rows);
                let row = report.rows.last_mut().expect("row just pushed");
                row.rate_so_far = rate;
                if !row.checks_passed() {
                    let failed: Vec<String> = row
                        .checks
                        .iter()
                        .filter(|c| !c.pass && c.note.is_none())
                        .map(|c| format!("{} (lhs {:.6e} > bound {:.6e})", c.name, c.lhs, c.rhs + c.extra))
                        .collect();
                    let error = Error::CheckFailed(format!("eps = {}: {}", row.eps, failed.join(", ")));
                    return Err(Box::new(SweepAbort { report, error }));
                }
            }
            Err(error) => return Err(Box::new(SweepAbort { report, error })),
        }
    }
    if !report.rows.is_empty() {
        let norms: Vec<(f64, f64)> = report.rows.iter().map(|r| (r.eps, r.g_eps_norm)).collect();
        let check = check_g_eps_uniform_norms(&norms, config.beta).expect("rows are not empty");
        let fatal = !check.pass && check.note.is_none();
        let detail = format!("g_eps_uniform (max {:.6e} > {:.6e})", check.lhs, check.rhs);
        report.g_eps_check = Some(check);
        report.fitted_rate = rate_of(&report.rows);
        if fatal {
            return Err(Box::new(SweepAbort {
                report,
                error: Error::CheckFailed(detail),
            }));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::ScatteringProfile;

    fn constant_config() -> SweepConfig {
        let mut c = SweepConfig::new(ScatteringProfile::constant(2.0).unwrap());
        c.eps = vec![0.4, 0.3, 0.2];
        c
    }

    #[test]
    fn zero_source_gives_zero_errors() {
        let mut c = constant_config();
        c.source = super::super::config::SourceSpec::Constant(0.0);
        let r = run_sweep(&c).unwrap();
        for row in &r.rows {
            assert_eq!(row.l2_err, 0.0);
            assert!(row.weak_err.iter().all(|&w| w == 0.0));
            assert!(row.s_hat.is_none());
            assert!(row.checks_passed());
        }
        assert!(r.fitted_rate.is_none());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn rows_follow_eps_order() {
        let r = run_sweep(&constant_config()).unwrap();
        let eps: Vec<f64> = r.rows.iter().map(|row| row.eps).collect();
        assert_eq!(eps, vec![0.4, 0.3, 0.2]);
        assert!(r.rows[0].rate_so_far.is_none());
        assert!(r.rows[2].rate_so_far.is_some());
        assert_eq!(r.fitted_rate, r.rows[2].rate_so_far);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn guard_skips_points() {
        let mut c = constant_config();
        c.resolution.max_cells = 100;
        // eps = 0.4 needs 50 cells, 0.3 needs 89, 0.2 needs 200
        let r = run_sweep(&c).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert_eq!(r.skipped, vec![SkippedPoint { eps: 0.2, required_cells: 200 }]);
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn solver_failure_keeps_partial_report() {
        let mut c = constant_config();
        c.solver.max_iter = 1;
        c.solver.accelerate = false;
        let abort = run_sweep(&c).unwrap_err();
        assert!(matches!(abort.error, Error::NonConvergence { .. }));
        assert!(abort.report.rows.is_empty());
    }

    #[test]
    fn weak_errors_of_a_test_function() {
        let grid = SlabGrid::new(1.0, 1000).unwrap();
        let phi1: Vec<f64> = grid.centers().iter().map(|&x| (PI * (x + 1.0) / 2.0).sin()).collect();
        let w = weak_errors(&grid, &phi1, 3);
        // sin(m pi (x+1)/2) are orthogonal on (-1, 1) with norm^2 = 1
        assert!((w[0] - 1.0).abs() < 1e-6);
        assert!(w[1] < 1e-9 && w[2] < 1e-9);
    }
}
