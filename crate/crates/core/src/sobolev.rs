//! Discrete Sobolev norms of periodic samples via the DFT.
//!
//! For samples `u_0..u_{N-1}` on a uniform periodic grid of `(0, L)` the
//! Fourier-mode norm of order `s` is
//!
//! ```text
//! ( sum_k (1 + (2 pi k / L)^2)^s |c_k|^2 )^(1/2),   c_k = sqrt(L) * DFT(u)_k / N,
//! ```
//!
//! so that `s = 0` reproduces the discrete `L^2` norm. The `k = 0` term is
//! dropped for negative orders (the mean is removed).

use std::fmt;
use std::str::FromStr;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

pub const MIN_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SobolevOrder {
    MinusOne,
    MinusHalf,
    Half,
}

impl SobolevOrder {
    pub fn value(self) -> f64 {
        match self {
            Self::MinusOne => -1.0,
            Self::MinusHalf => -0.5,
            Self::Half => 0.5,
        }
    }

    pub fn from_value(s: f64) -> Result<Self> {
        if s == -1.0 {
            Ok(Self::MinusOne)
        } else if s == -0.5 {
            Ok(Self::MinusHalf)
        } else if s == 0.5 {
            Ok(Self::Half)
        } else {
            Err(Error::UnsupportedOrder(s))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    Fourier,
    /// Geometric mean of the two neighbouring integer-order norms
    /// (`H^-1` and `L^2` for `s = -1/2`, `L^2` and `H^1` for `s = 1/2`).
    DualityInterpolation,
}

impl FromStr for NormMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fourier" => Ok(Self::Fourier),
            "duality-interpolation" | "duality" => Ok(Self::DualityInterpolation),
            other => Err(Error::InvalidConfig(format!("unknown norm mode `{other}`"))),
        }
    }
}

impl fmt::Display for NormMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fourier => f.write_str("fourier"),
            Self::DualityInterpolation => f.write_str("duality-interpolation"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevNormResult {
    pub order: SobolevOrder,
    pub value: f64,
    pub mode: NormMode,
}

/// Values on a uniform periodic grid covering `(x0, x0 + length)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSamples {
    length: f64,
    values: Vec<f64>,
}

impl PeriodicSamples {
    pub fn uniform(length: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() < MIN_SAMPLES {
            return Err(Error::TooFewSamples {
                min: MIN_SAMPLES,
                got: values.len(),
            });
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidProblem(format!("period length must be positive, got {length}")));
        }
        Ok(Self { length, values })
    }

    /// Samples at explicit positions `x_k = x_0 + k L / N`; the spacing must
    /// be uniform to `1e-9` relative.
    pub fn from_positions(positions: &[f64], values: Vec<f64>, length: f64) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(Error::InvalidProblem(format!(
                "{} positions for {} values",
                positions.len(),
                values.len()
            )));
        }
        if values.len() < MIN_SAMPLES {
            return Err(Error::TooFewSamples {
                min: MIN_SAMPLES,
                got: values.len(),
            });
        }
        let dx = length / values.len() as f64;
        for (k, &x) in positions.iter().enumerate() {
            let deviation = (x - positions[0] - k as f64 * dx).abs() / dx;
            if deviation > 1e-9 {
                return Err(Error::NonUniformGrid { index: k, deviation });
            }
        }
        Self::uniform(length, values)
    }

    /// Samples `u` at `x_k = k L / N`, `k = 0..n`.
    pub fn sample(length: f64, n: usize, u: impl Fn(f64) -> f64) -> Result<Self> {
        let dx = length / n as f64;
        Self::uniform(length, (0..n).map(|k| u(k as f64 * dx)).collect())
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Scaled Fourier coefficients `c_k` paired with their integer wavenumbers.
    fn spectrum(&self) -> Vec<(f64, f64)> {
        let n = self.values.len();
        let mut buf: Vec<Complex<f64>> = self.values.iter().map(|&v| Complex::new(v, 0.0)).collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let scale = self.length.sqrt() / n as f64;
        buf.iter()
            .enumerate()
            .map(|(m, c)| {
                let k = if m <= n / 2 { m as f64 } else { m as f64 - n as f64 };
                (k, (c * scale).norm_sqr())
            })
            .collect()
    }

    /// Fourier-mode norm of real order `s`; the mean is dropped when `s < 0`
    /// or `drop_mean` is set.
    pub fn fourier_norm(&self, s: f64, drop_mean: bool) -> f64 {
        let omega = 2.0 * std::f64::consts::PI / self.length;
        let skip_mean = drop_mean || s < 0.0;
        self.spectrum()
            .into_iter()
            .filter(|&(k, _)| !(skip_mean && k == 0.0))
            .map(|(k, c2)| (1.0 + (omega * k).powi(2)).powf(s) * c2)
            .sum::<f64>()
            .sqrt()
    }
}

pub fn sobolev_norm(samples: &PeriodicSamples, order: SobolevOrder, mode: NormMode) -> SobolevNormResult {
    let value = match (mode, order) {
        (NormMode::Fourier, o) => samples.fourier_norm(o.value(), false),
        (NormMode::DualityInterpolation, SobolevOrder::MinusHalf) => {
            (samples.fourier_norm(-1.0, true) * samples.fourier_norm(0.0, true)).sqrt()
        }
        (NormMode::DualityInterpolation, SobolevOrder::Half) => {
            (samples.fourier_norm(0.0, false) * samples.fourier_norm(1.0, false)).sqrt()
        }
        // H^-1 is itself the dual norm; nothing to interpolate
        (NormMode::DualityInterpolation, SobolevOrder::MinusOne) => samples.fourier_norm(-1.0, true),
    };
    SobolevNormResult { order, value, mode }
}
