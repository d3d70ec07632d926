use crate::error::{Error, Result};

/// Smallest admissible cell count.
pub const MIN_CELLS: usize = 16;

/// Uniform cell-centred grid on the slab `(-l, l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlabGrid {
    half_length: f64,
    cells: usize,
    width: f64,
    centers: Vec<f64>,
}

impl SlabGrid {
    pub fn new(half_length: f64, cells: usize) -> Result<Self> {
        if !(half_length > 0.0 && half_length.is_finite()) {
            return Err(Error::InvalidProblem(format!(
                "half length must be positive, got {half_length}"
            )));
        }
        if cells < MIN_CELLS {
            return Err(Error::InvalidProblem(format!(
                "need at least {MIN_CELLS} cells, got {cells}"
            )));
        }
        let width = 2.0 * half_length / cells as f64;
        let centers = (0..cells)
            .map(|i| -half_length + (i as f64 + 0.5) * width)
            .collect();
        Ok(Self {
            half_length,
            cells,
            width,
            centers,
        })
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Cell width `h`.
    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    /// Face `k` sits at `-l + k h`, `k = 0..=cells`.
    pub fn face(&self, k: usize) -> f64 {
        -self.half_length + k as f64 * self.width
    }

    /// Discrete `L^2` norm `(sum_i h u_i^2)^(1/2)`.
    pub fn l2_norm(&self, u: &[f64]) -> f64 {
        self.inner(u, u).sqrt()
    }

    /// `sum_i h u_i v_i`.
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() * self.width
    }

    /// Derivative at cell centres: centred differences inside, one-sided
    /// second-order stencils at the two end cells.
    pub fn derivative(&self, u: &[f64]) -> Vec<f64> {
        let n = u.len();
        let h = self.width;
        let mut du = vec![0.0; n];
        if n < 3 {
            return du;
        }
        du[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
        for i in 1..n - 1 {
            du[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
        }
        du[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
        du
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry() {
        let g = SlabGrid::new(1.0, 16).unwrap();
        assert_eq!(g.width(), 0.125);
        assert_eq!(g.centers()[0], -0.9375);
        assert_eq!(g.face(16), 1.0);
        assert!(SlabGrid::new(1.0, 15).is_err());
        assert!(SlabGrid::new(0.0, 32).is_err());
    }

    #[test]
    fn derivative_is_exact_on_quadratics() {
        let g = SlabGrid::new(1.0, 32).unwrap();
        let u: Vec<f64> = g.centers().iter().map(|x| 3.0 * x * x - x + 2.0).collect();
        let du = g.derivative(&u);
        for (x, d) in g.centers().iter().zip(&du) {
            assert!((d - (6.0 * x - 1.0)).abs() < 1e-12);
        }
    }
}
