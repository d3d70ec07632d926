//! Log-log rate fits and effective-coefficient extraction.

use crate::diffusion::{solve_limit, DiffusionProblem};
use crate::error::{Error, Result};
use crate::grid::SlabGrid;

/// Least-squares slope of `log error` against `log eps`.
pub fn fit_rate(pairs: &[(f64, f64)]) -> Result<f64> {
    if pairs.len() < 3 {
        return Err(Error::InvalidRateData(format!(
            "need at least 3 points, got {}",
            pairs.len()
        )));
    }
    if let Some(&(e, err)) = pairs.iter().find(|(e, err)| !(*e > 0.0 && *err > 0.0 && err.is_finite())) {
        return Err(Error::InvalidRateData(format!(
            "eps and error must be positive, got ({e}, {err})"
        )));
    }
    let n = pairs.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.iter().map(|(e, err)| (e.ln(), err.ln())).unzip();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidRateData("all eps values coincide".into()));
    }
    Ok(sxy / sxx)
}

/// Relative width at which the golden-section search stops.
pub const FIT_RELATIVE_WIDTH: f64 = 1e-4;
/// Log-spaced probes used to bracket the minimum and test unimodality.
const SCAN_POINTS: usize = 33;

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveFit {
    pub s_hat: f64,
    /// `||density - rho_s||` at `s_hat`.
    pub objective: f64,
    /// Every `(s, objective)` evaluated, in order.
    pub trace: Vec<(f64, f64)>,
}

/// Finds `s` minimizing `||density - rho_s||`, where `rho_s` solves
/// `rho - (<v^2> / s) rho'' = g` with homogeneous Dirichlet data.
///
/// A log-spaced scan of `[lo, hi]` must decrease then increase with the
/// minimum strictly inside; golden-section search then refines the
/// bracketing pair of scan points.
pub fn fit_effective_coefficient(
    density: &[f64],
    source: &[f64],
    grid: &SlabGrid,
    second_moment: f64,
    bracket: (f64, f64),
) -> Result<EffectiveFit> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidProblem(format!("invalid search bracket [{lo}, {hi}]")));
    }
    if density.len() != grid.cells() {
        return Err(Error::LengthMismatch {
            expected: grid.cells(),
            got: density.len(),
        });
    }
    let n = grid.cells();
    let mut problem = DiffusionProblem::new(grid.clone(), vec![1.0; n + 1], source.to_vec())?;
    let mut trace = Vec::new();
    let mut objective = |s: f64| -> Result<f64> {
        problem.set_kappa(second_moment / s);
        let rho = solve_limit(&problem)?.rho;
        let diff: Vec<f64> = rho.iter().zip(density).map(|(a, b)| a - b).collect();
        let v = grid.l2_norm(&diff);
        trace.push((s, v));
        Ok(v)
    };

    let ratio = (hi / lo).powf(1.0 / (SCAN_POINTS - 1) as f64);
    let scan: Vec<f64> = (0..SCAN_POINTS).map(|k| lo * ratio.powi(k as i32)).collect();
    let values = scan.iter().map(|&s| objective(s)).collect::<Result<Vec<f64>>>()?;
    let m = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .unwrap_or(0);
    let noise = 1e-12 * values[m].max(f64::MIN_POSITIVE);
    let unimodal = values[..=m].windows(2).all(|w| w[1] <= w[0] + noise)
        && values[m..].windows(2).all(|w| w[1] + noise >= w[0]);
    if m == 0 || m == SCAN_POINTS - 1 || !unimodal {
        drop(objective);
        return Err(Error::BracketFailure { trace });
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (scan[m - 1], scan[m + 1]);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = objective(c)?;
    let mut fd = objective(d)?;
    while (b - a) > FIT_RELATIVE_WIDTH * 0.5 * (a + b) {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d)?;
        }
    }
    let s_hat = 0.5 * (a + b);
    let best = objective(s_hat)?;
    drop(objective);
    Ok(EffectiveFit {
        s_hat,
        objective: best,
        trace,
    })
}
