//! Discrete velocity measure on (-1, 1) and the collision operator
//! `L phi = phi - <phi>`.
//!
//! Quadratures are symmetric under `v -> -v` with matching weights, never
//! contain `v = 0`, and carry weights normalized to a probability measure.
//! Odd moments are computed by symmetric pairing and are exactly zero.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of moments cached at construction (`k = 0..=MAX_CACHED_MOMENT`).
const MAX_CACHED_MOMENT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureFamily {
    /// Gauss-Legendre nodes with weights halved, i.e. the normalized
    /// uniform measure `dv / 2`.
    GaussLegendreUniform,
    /// Midpoint rule on `n` equal cells of (-1, 1).
    UniformMidpoint,
}

impl FromStr for QuadratureFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gauss-legendre-uniform" => Ok(Self::GaussLegendreUniform),
            "uniform-midpoint" => Ok(Self::UniformMidpoint),
            other => Err(Error::InvalidQuadrature(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for QuadratureFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GaussLegendreUniform => f.write_str("gauss-legendre-uniform"),
            Self::UniformMidpoint => f.write_str("uniform-midpoint"),
        }
    }
}

/// A symmetric discrete probability measure on the velocity interval.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityQuadrature {
    family: QuadratureFamily,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    moments: Vec<f64>,
}

impl VelocityQuadrature {
    /// Build a quadrature with `n` nodes. `n` must be even and at least 2.
    pub fn build(family: QuadratureFamily, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidQuadrature(format!(
                "node count must be at least 2, got {n}"
            )));
        }
        if n % 2 != 0 {
            return Err(Error::InvalidQuadrature(format!(
                "node count must be even so nodes pair under v -> -v, got {n}"
            )));
        }
        // positive half, ascending
        let half = match family {
            QuadratureFamily::GaussLegendreUniform => gauss_legendre_positive_half(n),
            QuadratureFamily::UniformMidpoint => {
                let dv = 2.0 / n as f64;
                (0..n / 2)
                    .map(|j| ((j as f64 + 0.5) * dv, 0.5 * dv))
                    .collect::<Vec<_>>()
            }
        };
        let total: f64 = half.iter().map(|&(_, w)| 2.0 * w).sum();

        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for &(v, w) in half.iter().rev() {
            nodes.push(-v);
            weights.push(w / total);
        }
        for &(v, w) in &half {
            nodes.push(v);
            weights.push(w / total);
        }

        let mut q = Self {
            family,
            nodes,
            weights,
            moments: Vec::new(),
        };
        q.moments = (0..=MAX_CACHED_MOMENT).map(|k| q.paired_moment(k)).collect();
        Ok(q)
    }

    /// The default 16-node Gauss-Legendre quadrature of the uniform measure.
    pub fn default_uniform() -> Self {
        Self::build(QuadratureFamily::GaussLegendreUniform, 16).expect("16 is a valid node count")
    }

    pub fn family(&self) -> QuadratureFamily {
        self.family
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes in ascending order; the first half are negative.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `<v^k> = sum_j w_j v_j^k`.
    pub fn moment(&self, k: usize) -> f64 {
        match self.moments.get(k) {
            Some(&m) => m,
            None => self.paired_moment(k),
        }
    }

    /// `<v^2>`, the diffusion constant of the limit problem.
    pub fn second_moment(&self) -> f64 {
        self.moment(2)
    }

    fn paired_moment(&self, k: usize) -> f64 {
        if k % 2 == 1 {
            return 0.0;
        }
        let half = self.nodes.len() / 2;
        self.nodes[half..]
            .iter()
            .zip(&self.weights[half..])
            .map(|(&v, &w)| 2.0 * w * v.powi(k as i32))
            .sum()
    }

    /// Quadrature-weighted average `<phi>`.
    pub fn average(&self, phi: &[f64]) -> Result<f64> {
        self.check_len(phi)?;
        Ok(self.weights.iter().zip(phi).map(|(w, p)| w * p).sum())
    }

    /// `(L phi)_j = phi_j - <phi>`.
    pub fn apply_collision(&self, phi: &[f64]) -> Result<Vec<f64>> {
        let mean = self.average(phi)?;
        Ok(phi.iter().map(|p| p - mean).collect())
    }

    /// `<phi L phi>`, computed as an inner product.
    pub fn dirichlet_form(&self, phi: &[f64]) -> Result<f64> {
        let lphi = self.apply_collision(phi)?;
        Ok(self.inner(phi, &lphi))
    }

    /// `(1/2) sum_j sum_m w_j w_m (phi_j - phi_m)^2`, the same quantity as
    /// [`Self::dirichlet_form`] written as a double sum.
    pub fn dirichlet_form_double_sum(&self, phi: &[f64]) -> Result<f64> {
        self.check_len(phi)?;
        let mut acc = 0.0;
        for (wj, pj) in self.weights.iter().zip(phi) {
            let mut row = 0.0;
            for (wm, pm) in self.weights.iter().zip(phi) {
                let d = pj - pm;
                row += wm * d * d;
            }
            acc += wj * row;
        }
        Ok(0.5 * acc)
    }

    /// `|<psi, L phi> - <phi, L psi>|`.
    pub fn self_adjointness_defect(&self, phi: &[f64], psi: &[f64]) -> Result<f64> {
        let lphi = self.apply_collision(phi)?;
        let lpsi = self.apply_collision(psi)?;
        Ok((self.inner(psi, &lphi) - self.inner(phi, &lpsi)).abs())
    }

    /// Weighted inner product `sum_j w_j a_j b_j`. Lengths are not checked.
    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(a.iter().zip(b))
            .map(|(w, (x, y))| w * x * y)
            .sum()
    }

    /// Samples `phi(v_j)` at every node.
    pub fn sample(&self, phi: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&v| phi(v)).collect()
    }

    fn check_len(&self, phi: &[f64]) -> Result<()> {
        if phi.len() != self.nodes.len() {
            return Err(Error::LengthMismatch {
                expected: self.nodes.len(),
                got: phi.len(),
            });
        }
        Ok(())
    }
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Positive Gauss-Legendre nodes (ascending) with weights for `dv` on (-1, 1).
fn gauss_legendre_positive_half(n: usize) -> Vec<(f64, f64)> {
    let mut half = Vec::with_capacity(n / 2);
    for i in 1..=n / 2 {
        // Tricomi initial guess for the i-th largest root
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        half.push((x, w));
    }
    half.reverse();
    half
}
