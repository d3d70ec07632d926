//! Finite-volume solver for `rho - (kappa rho')' = g` on `(-l, l)` with
//! `rho(+-l) = 0`.

use crate::error::{Error, Result};
use crate::grid::SlabGrid;
use crate::scattering::ScatteringProfile;
use crate::tridiag::solve_tridiagonal;
use crate::velocity::VelocityQuadrature;

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionProblem {
    grid: SlabGrid,
    kappa: Vec<f64>,
    source: Vec<f64>,
    /// Distance beyond each boundary face at which the solution is pinned to
    /// zero. Zero gives the plain Dirichlet condition.
    extrapolation: [f64; 2],
}

impl DiffusionProblem {
    /// `kappa` is sampled at the `cells + 1` faces, `source` at cell centres.
    pub fn new(grid: SlabGrid, kappa: Vec<f64>, source: Vec<f64>) -> Result<Self> {
        if kappa.len() != grid.cells() + 1 {
            return Err(Error::InvalidProblem(format!(
                "kappa needs {} face values, got {}",
                grid.cells() + 1,
                kappa.len()
            )));
        }
        if source.len() != grid.cells() {
            return Err(Error::InvalidProblem(format!(
                "source needs {} cell values, got {}",
                grid.cells(),
                source.len()
            )));
        }
        if let Some(k) = kappa.iter().position(|k| !(*k > 0.0 && k.is_finite())) {
            return Err(Error::InvalidProblem(format!(
                "kappa must be positive and finite, face {k} has {}",
                kappa[k]
            )));
        }
        if let Some(i) = source.iter().position(|g| !g.is_finite()) {
            return Err(Error::InvalidProblem(format!("source is not finite in cell {i}")));
        }
        Ok(Self {
            grid,
            kappa,
            source,
            extrapolation: [0.0, 0.0],
        })
    }

    /// Coefficient given at cell centres; interior faces take the harmonic
    /// average of the two neighbours.
    pub fn from_cell_kappa(grid: SlabGrid, kappa_cells: &[f64], source: Vec<f64>) -> Result<Self> {
        let n = grid.cells();
        if kappa_cells.len() != n {
            return Err(Error::InvalidProblem(format!(
                "kappa needs {n} cell values, got {}",
                kappa_cells.len()
            )));
        }
        let mut kappa = Vec::with_capacity(n + 1);
        kappa.push(kappa_cells[0]);
        for w in kappa_cells.windows(2) {
            kappa.push(2.0 * w[0] * w[1] / (w[0] + w[1]));
        }
        kappa.push(kappa_cells[n - 1]);
        Self::new(grid, kappa, source)
    }

    pub(crate) fn with_extrapolation(mut self, left: f64, right: f64) -> Self {
        self.extrapolation = [left, right];
        self
    }

    pub fn grid(&self) -> &SlabGrid {
        &self.grid
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    pub fn source(&self) -> &[f64] {
        &self.source
    }

    /// Sets a uniform coefficient on every face.
    pub(crate) fn set_kappa(&mut self, kappa: f64) {
        self.kappa.fill(kappa);
    }

    pub(crate) fn set_source(&mut self, source: Vec<f64>) {
        debug_assert_eq!(source.len(), self.grid.cells());
        self.source = source;
    }

    /// Face conductances `kappa_f / d_f`, where `d_f` is the distance between
    /// the unknowns straddling face `f`.
    fn conductances(&self) -> Vec<f64> {
        let n = self.grid.cells();
        let h = self.grid.width();
        let mut c: Vec<f64> = self.kappa.iter().map(|k| k / h).collect();
        c[0] = self.kappa[0] / (0.5 * h + self.extrapolation[0]);
        c[n] = self.kappa[n] / (0.5 * h + self.extrapolation[1]);
        c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionSolution {
    pub rho: Vec<f64>,
    /// `-kappa rho'` at the faces.
    pub face_flux: Vec<f64>,
}

/// Direct tridiagonal solve of the cell-centred finite-volume system.
pub fn solve_limit(problem: &DiffusionProblem) -> Result<DiffusionSolution> {
    let n = problem.grid.cells();
    let h = problem.grid.width();
    let c = problem.conductances();

    let mut lower = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n];
    for i in 0..n {
        diag[i] = h + c[i] + c[i + 1];
        if i > 0 {
            lower[i] = -c[i];
        }
        if i + 1 < n {
            upper[i] = -c[i + 1];
        }
    }
    let mut rho: Vec<f64> = problem.source.iter().map(|g| g * h).collect();
    solve_tridiagonal(&lower, &diag, &upper, &mut rho)?;

    let mut face_flux = vec![0.0; n + 1];
    face_flux[0] = -c[0] * rho[0];
    for f in 1..n {
        face_flux[f] = -c[f] * (rho[f] - rho[f - 1]);
    }
    face_flux[n] = c[n] * rho[n - 1];
    Ok(DiffusionSolution { rho, face_flux })
}

/// Relative defect of the discrete energy identity
/// `sum rho^2 h + sum_f c_f (jump_f rho)^2 = sum g rho h`.
pub fn energy_identity_defect(problem: &DiffusionProblem, sol: &DiffusionSolution) -> f64 {
    let n = problem.grid.cells();
    let c = problem.conductances();
    let rho = &sol.rho;
    let mass = problem.grid.inner(rho, rho);
    let mut dissipation = c[0] * rho[0] * rho[0] + c[n] * rho[n - 1] * rho[n - 1];
    for f in 1..n {
        let d = rho[f] - rho[f - 1];
        dissipation += c[f] * d * d;
    }
    let work = problem.grid.inner(&problem.source, rho);
    let lhs = mass + dissipation;
    if work == 0.0 {
        return lhs.abs();
    }
    ((lhs - work) / work).abs()
}

/// Which effective scattering coefficient enters the limit problem.
pub enum LimitCoefficient<'a> {
    /// `kappa = <v^2> / sigma*` with `sigma*` the cell average of the profile.
    WeakStar(&'a ScatteringProfile),
    /// `kappa(x) = <v^2> / sigma_bar(x)`.
    PointwiseSigmaBar(&'a dyn Fn(f64) -> f64),
}

pub fn build_limit_problem(
    quadrature: &VelocityQuadrature,
    coefficient: LimitCoefficient<'_>,
    grid: &SlabGrid,
    source: Vec<f64>,
) -> Result<DiffusionProblem> {
    let d = quadrature.second_moment();
    let faces = grid.cells() + 1;
    let kappa = match coefficient {
        LimitCoefficient::WeakStar(profile) => vec![d / profile.weak_star_limit(); faces],
        LimitCoefficient::PointwiseSigmaBar(sigma_bar) => {
            let values: Vec<f64> = (0..faces).map(|k| sigma_bar(grid.face(k))).collect();
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            if !(min > 0.0) {
                return Err(Error::InvalidProblem(format!(
                    "sigma_bar must be bounded away from zero, min over faces is {min}"
                )));
            }
            values.into_iter().map(|s| d / s).collect()
        }
    };
    DiffusionProblem::new(grid.clone(), kappa, source)
}
