//! Discrete-ordinates solver for the scaled stationary linear Boltzmann
//! equation on a slab,
//!
//! ```text
//! f + (v / eps) f_x + (sigma_eps / eps^2) (f - <f>) = g,   x in (-l, l),
//! f(-l, v > 0) = 0,   f(l, v < 0) = 0,
//! ```
//!
//! together with the velocity moments and moment-method diagnostics.
//!
//! Each ordinate is discretized with first-order upwinding (step scheme):
//! the face value is the upwind cell value and the inflow face value is
//! exactly zero. The coupled system is solved by source iteration with a
//! diffusion-synthetic correction of the density after every sweep.

use crate::diffusion::{solve_limit, DiffusionProblem};
use crate::error::{Error, Result};
use crate::grid::SlabGrid;
use crate::scattering::ScatteringField;
use crate::velocity::VelocityQuadrature;

/// Cells required per oscillation period of `sigma_eps`.
pub const CELLS_PER_PERIOD: f64 = 16.0;

#[derive(Debug, Clone, PartialEq)]
pub struct KineticProblem {
    grid: SlabGrid,
    quadrature: VelocityQuadrature,
    field: ScatteringField,
    sigma: Vec<f64>,
    source: Vec<f64>,
}

impl KineticProblem {
    pub fn new(
        grid: SlabGrid,
        quadrature: VelocityQuadrature,
        field: ScatteringField,
        source: Vec<f64>,
    ) -> Result<Self> {
        let eps = field.epsilon();
        if eps > 1.0 {
            return Err(Error::InvalidProblem(format!("epsilon must be at most 1, got {eps}")));
        }
        if source.len() != grid.cells() {
            return Err(Error::InvalidProblem(format!(
                "source needs {} cell values, got {}",
                grid.cells(),
                source.len()
            )));
        }
        if let Some(i) = source.iter().position(|g| !g.is_finite()) {
            return Err(Error::InvalidProblem(format!("source is not finite in cell {i}")));
        }
        if !field.profile().is_constant() {
            let h_max = field.spatial_period() / CELLS_PER_PERIOD;
            if grid.width() > h_max * (1.0 + 1e-9) {
                return Err(Error::InvalidProblem(format!(
                    "cell width {:.4e} does not resolve the oscillation period {:.4e} \
                     (need h <= {:.4e})",
                    grid.width(),
                    field.spatial_period(),
                    h_max
                )));
            }
        }
        let sigma = grid.centers().iter().map(|&x| field.evaluate(x)).collect();
        Ok(Self {
            grid,
            quadrature,
            field,
            sigma,
            source,
        })
    }

    pub fn grid(&self) -> &SlabGrid {
        &self.grid
    }

    pub fn quadrature(&self) -> &VelocityQuadrature {
        &self.quadrature
    }

    pub fn field(&self) -> &ScatteringField {
        &self.field
    }

    pub fn epsilon(&self) -> f64 {
        self.field.epsilon()
    }

    /// `sigma_eps` at cell centres.
    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn source(&self) -> &[f64] {
        &self.source
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Target for `||residual|| / ||g||` in discrete `L^2(dx dmu)`.
    pub tol: f64,
    pub max_iter: usize,
    /// Apply the diffusion-synthetic density correction.
    pub accelerate: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 100_000,
            accelerate: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationStats {
    pub iterations: usize,
    /// Final residual, relative to `||g||` (absolute when `g = 0`).
    pub residual: f64,
    pub accelerated: bool,
}

/// Discrete distribution `f(x_i, v_j)`, stored ordinate by ordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct KineticSolution {
    problem: KineticProblem,
    f: Vec<f64>,
    stats: IterationStats,
}

impl KineticSolution {
    /// Wraps an arbitrary distribution (ordinate-major, `n_v * n_x` values)
    /// so the moment diagnostics can be applied to it.
    pub fn from_values(problem: KineticProblem, f: Vec<f64>) -> Result<Self> {
        let expected = problem.quadrature.len() * problem.grid.cells();
        if f.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: f.len(),
            });
        }
        Ok(Self {
            problem,
            f,
            stats: IterationStats {
                iterations: 0,
                residual: f64::NAN,
                accelerated: false,
            },
        })
    }

    pub fn problem(&self) -> &KineticProblem {
        &self.problem
    }

    pub fn stats(&self) -> IterationStats {
        self.stats
    }

    /// All values, ordinate-major.
    pub fn values(&self) -> &[f64] {
        &self.f
    }

    /// `f(x_i, v_j)` for all `i`.
    pub fn ordinate(&self, j: usize) -> &[f64] {
        let n = self.problem.grid.cells();
        &self.f[j * n..(j + 1) * n]
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.f[j * self.problem.grid.cells() + i]
    }

    /// `<v^k f>` at cell centres.
    pub fn velocity_moment(&self, k: usize) -> Vec<f64> {
        let q = &self.problem.quadrature;
        let mut m = vec![0.0; self.problem.grid.cells()];
        for (j, (&v, &w)) in q.nodes().iter().zip(q.weights()).enumerate() {
            let c = w * v.powi(k as i32);
            for (acc, &fv) in m.iter_mut().zip(self.ordinate(j)) {
                *acc += c * fv;
            }
        }
        m
    }

    /// Local density `<f>`.
    pub fn density(&self) -> Vec<f64> {
        self.velocity_moment(0)
    }

    /// `<v f>`.
    pub fn flux(&self) -> Vec<f64> {
        self.velocity_moment(1)
    }

    /// `<v^2 f>`.
    pub fn second_moment(&self) -> Vec<f64> {
        self.velocity_moment(2)
    }

    /// `<f> + (1/eps) D_h <v f> - g`.
    pub fn continuity_residual(&self) -> Vec<f64> {
        let eps = self.problem.epsilon();
        let rho = self.density();
        let dj = self.problem.grid.derivative(&self.flux());
        rho.iter()
            .zip(&dj)
            .zip(&self.problem.source)
            .map(|((r, d), g)| r + d / eps - g)
            .collect()
    }

    /// `G_eps = g - <f> + (eps / sigma) D_h <v f> - eps (D_h sigma / sigma^2) <v f>`.
    pub fn g_eps(&self) -> Vec<f64> {
        let eps = self.problem.epsilon();
        let grid = &self.problem.grid;
        let rho = self.density();
        let j = self.flux();
        let dj = grid.derivative(&j);
        let sigma = &self.problem.sigma;
        let dsigma = grid.derivative(sigma);
        (0..grid.cells())
            .map(|i| {
                let s = sigma[i];
                self.problem.source[i] - rho[i] + eps / s * dj[i] - eps * dsigma[i] / (s * s) * j[i]
            })
            .collect()
    }

    /// `zeta_eps = (1 / sigma) D_h <v^2 f>`.
    pub fn zeta(&self) -> Vec<f64> {
        let d = self.problem.grid.derivative(&self.second_moment());
        d.iter().zip(&self.problem.sigma).map(|(d, s)| d / s).collect()
    }
}

/// Solves the upwind system by accelerated source iteration.
///
/// Sweeps run in a fixed order (ordinates ascending, cells in the upwind
/// direction) so identical inputs give bitwise identical output.
pub fn solve_steady(problem: &KineticProblem, options: &SolverOptions) -> Result<KineticSolution> {
    if !(options.tol > 0.0 && options.tol <= 1e-4) {
        return Err(Error::InvalidProblem(format!(
            "tolerance must lie in (0, 1e-4], got {}",
            options.tol
        )));
    }
    if options.max_iter == 0 {
        return Err(Error::InvalidProblem("max_iter must be at least 1".into()));
    }

    let grid = &problem.grid;
    let n = grid.cells();
    let h = grid.width();
    let eps = problem.epsilon();
    let q = &problem.quadrature;
    let d = q.second_moment();

    // scattering rate sigma / eps^2
    let scat: Vec<f64> = problem.sigma.iter().map(|s| s / (eps * eps)).collect();
    let g_norm = grid.l2_norm(&problem.source);
    let target = if g_norm > 0.0 { options.tol * g_norm } else { 0.0 };

    let mut dsa = if options.accelerate {
        let kappa: Vec<f64> = problem.sigma.iter().map(|s| d / (s + eps * eps)).collect();
        // Marshak-type extrapolation distance for the correction equation
        let left = 2.0 * eps * kappa[0];
        let right = 2.0 * eps * kappa[n - 1];
        Some(DiffusionProblem::from_cell_kappa(grid.clone(), &kappa, vec![0.0; n])?.with_extrapolation(left, right))
    } else {
        None
    };

    let mut f = vec![0.0; q.len() * n];
    let mut rho = vec![0.0; n];
    let mut emission = vec![0.0; n];
    let mut residual = vec![0.0; n];

    for iteration in 1..=options.max_iter {
        for i in 0..n {
            emission[i] = problem.source[i] + scat[i] * rho[i];
        }
        sweep_all(q, &scat, &emission, eps, h, &mut f);

        let rho_half = density_of(q, &f, n);
        if let Some(i) = rho_half.iter().position(|r| !r.is_finite()) {
            return Err(Error::NonFinite {
                cell: i,
                x: grid.centers()[i],
                iteration,
            });
        }
        for i in 0..n {
            residual[i] = scat[i] * (rho_half[i] - rho[i]);
        }
        let res_norm = grid.l2_norm(&residual);
        let relative = if g_norm > 0.0 { res_norm / g_norm } else { res_norm };
        if res_norm <= target {
            return Ok(KineticSolution {
                problem: problem.clone(),
                f,
                stats: IterationStats {
                    iterations: iteration,
                    residual: relative,
                    accelerated: options.accelerate,
                },
            });
        }
        if iteration == options.max_iter {
            return Err(Error::NonConvergence {
                iterations: iteration,
                residual: relative,
            });
        }

        match dsa.as_mut() {
            Some(correction) => {
                correction.set_source(residual.clone());
                let delta = solve_limit(correction)?.rho;
                for i in 0..n {
                    rho[i] = rho_half[i] + delta[i];
                }
            }
            None => rho.copy_from_slice(&rho_half),
        }
    }
    unreachable!("loop returns on its last iteration")
}

/// Upwind transport sweep of every ordinate against a fixed emission
/// density `g + (sigma / eps^2) rho`.
fn sweep_all(q: &VelocityQuadrature, scat: &[f64], emission: &[f64], eps: f64, h: f64, f: &mut [f64]) {
    let n = emission.len();
    for (j, &v) in q.nodes().iter().enumerate() {
        let a = v.abs() / (eps * h);
        let psi = &mut f[j * n..(j + 1) * n];
        let mut upstream = 0.0;
        if v > 0.0 {
            for i in 0..n {
                let value = (emission[i] + a * upstream) / (1.0 + scat[i] + a);
                psi[i] = value;
                upstream = value;
            }
        } else {
            for i in (0..n).rev() {
                let value = (emission[i] + a * upstream) / (1.0 + scat[i] + a);
                psi[i] = value;
                upstream = value;
            }
        }
    }
}

fn density_of(q: &VelocityQuadrature, f: &[f64], n: usize) -> Vec<f64> {
    let mut rho = vec![0.0; n];
    for (j, &w) in q.weights().iter().enumerate() {
        for (r, &fv) in rho.iter_mut().zip(&f[j * n..(j + 1) * n]) {
            *r += w * fv;
        }
    }
    rho
}
