//! Browser bindings for the single-page demo in `www/`.

use std::f64::consts::PI;

use wasm_bindgen::prelude::*;

use lbh_core::diffusion::solve_limit;
use lbh_core::estimates::{coefficient_deviation, HHalfOptions, SigmaBar};
use lbh_core::harness::{fit_effective_coefficient, fit_rate, SourceSpec, SweepConfig};
use lbh_core::kinetic::solve_steady;
use lbh_core::scattering::ScatteringProfile;
use lbh_core::sobolev::{sobolev_norm, NormMode, SobolevOrder};

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// `kind` is `sinusoidal` (mean `a`, amplitude `b`) or `two-phase` (values `a`, `b`), period 2π.
fn profile(kind: &str, a: f64, b: f64) -> Result<ScatteringProfile, JsError> {
    match kind {
        "sinusoidal" => ScatteringProfile::sinusoidal(a, b, 2.0 * PI),
        "two-phase" => ScatteringProfile::two_phase([a, b], [0.5, 0.5], 2.0 * PI),
        "constant" => ScatteringProfile::constant(a),
        other => return Err(JsError::new(&format!("unknown profile `{other}`"))),
    }
    .map_err(js_err)
}

fn config(kind: &str, a: f64, b: f64, beta: f64, bump: bool) -> Result<SweepConfig, JsError> {
    let mut c = SweepConfig::new(profile(kind, a, b)?);
    c.beta = beta;
    if bump {
        c.source = SourceSpec::GaussianBump { amplitude: 1.0, width: 0.08 };
    }
    Ok(c)
}

#[wasm_bindgen]
pub struct Comparison {
    x: Vec<f64>,
    kinetic: Vec<f64>,
    limit: Vec<f64>,
    pub l2_err: f64,
    pub cells: usize,
    pub iterations: usize,
}

#[wasm_bindgen]
impl Comparison {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn kinetic(&self) -> Vec<f64> {
        self.kinetic.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn limit(&self) -> Vec<f64> {
        self.limit.clone()
    }
}

/// Kinetic density against the weak-star diffusion limit at one eps.
#[wasm_bindgen]
pub fn compare_densities(kind: &str, a: f64, b: f64, beta: f64, eps: f64, bump: bool) -> Result<Comparison, JsError> {
    let c = config(kind, a, b, beta, bump)?;
    let problem = c.kinetic_problem(eps).map_err(js_err)?;
    let sol = solve_steady(&problem, &c.solver).map_err(js_err)?;
    let grid = problem.grid();
    let limit = solve_limit(&c.weak_star_problem(grid).map_err(js_err)?).map_err(js_err)?.rho;
    let kinetic = sol.density();
    let diff: Vec<f64> = kinetic.iter().zip(&limit).map(|(k, l)| k - l).collect();
    Ok(Comparison {
        x: grid.centers().to_vec(),
        l2_err: grid.l2_norm(&diff),
        cells: grid.cells(),
        iterations: sol.stats().iterations,
        kinetic,
        limit,
    })
}

#[wasm_bindgen]
pub struct Scaling {
    eps: Vec<f64>,
    minus_one: Vec<f64>,
    minus_half: Vec<f64>,
    pub minus_one_slope: f64,
    pub minus_half_slope: f64,
}

#[wasm_bindgen]
impl Scaling {
    #[wasm_bindgen(getter)]
    pub fn eps(&self) -> Vec<f64> {
        self.eps.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn minus_one(&self) -> Vec<f64> {
        self.minus_one.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn minus_half(&self) -> Vec<f64> {
        self.minus_half.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn satisfied(&self) -> bool {
        self.minus_half_slope > 1.0
    }
}

/// H^-1 and H^-1/2 norms of the relative coefficient deviation on (0, 2π), with log-log slopes.
#[wasm_bindgen]
pub fn sobolev_scaling(kind: &str, a: f64, b: f64, beta: f64, eps: Vec<f64>) -> Result<Scaling, JsError> {
    let p = profile(kind, a, b)?;
    let bar = SigmaBar::Constant(p.weak_star_limit());
    let options = HHalfOptions::default();
    let (mut m1, mut mh) = (Vec::new(), Vec::new());
    for &e in &eps {
        let s = coefficient_deviation(&p, &bar, beta, e, &options).map_err(js_err)?;
        m1.push(sobolev_norm(&s, SobolevOrder::MinusOne, NormMode::Fourier).value);
        mh.push(sobolev_norm(&s, SobolevOrder::MinusHalf, NormMode::Fourier).value);
    }
    let slope = |v: &[f64]| {
        let pairs: Vec<(f64, f64)> = eps.iter().copied().zip(v.iter().copied()).collect();
        fit_rate(&pairs).unwrap_or(f64::NAN)
    };
    Ok(Scaling {
        minus_one_slope: slope(&m1),
        minus_half_slope: slope(&mh),
        eps,
        minus_one: m1,
        minus_half: mh,
    })
}

#[wasm_bindgen]
pub struct CoefficientFit {
    scan_s: Vec<f64>,
    scan_objective: Vec<f64>,
    pub s_hat: f64,
    pub objective: f64,
    pub sigma_star: f64,
    pub sigma_harm: f64,
}

#[wasm_bindgen]
impl CoefficientFit {
    #[wasm_bindgen(getter)]
    pub fn scan_s(&self) -> Vec<f64> {
        self.scan_s.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn scan_objective(&self) -> Vec<f64> {
        self.scan_objective.clone()
    }
}

/// Best constant `s` such that the limit with coefficient `s` matches the kinetic density.
#[wasm_bindgen]
pub fn fit_coefficient(kind: &str, a: f64, b: f64, beta: f64, eps: f64) -> Result<CoefficientFit, JsError> {
    let c = config(kind, a, b, beta, true)?;
    let problem = c.kinetic_problem(eps).map_err(js_err)?;
    let sol = solve_steady(&problem, &c.solver).map_err(js_err)?;
    let p = &c.profile;
    let bracket = (0.5 * p.lower(), 2.0 * p.upper());
    let m2 = problem.quadrature().moment(2);
    let fit = fit_effective_coefficient(&sol.density(), problem.source(), problem.grid(), m2, bracket)
        .map_err(js_err)?;
    let mut trace = fit.trace.clone();
    trace.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(CoefficientFit {
        scan_s: trace.iter().map(|t| t.0).collect(),
        scan_objective: trace.iter().map(|t| t.1).collect(),
        s_hat: fit.s_hat,
        objective: fit.objective,
        sigma_star: p.weak_star_limit(),
        sigma_harm: p.harmonic_mean(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_error_is_small() {
        let c = compare_densities("sinusoidal", 2.0, 1.0, 1.0, 0.1, false).ok().unwrap();
        assert_eq!(c.x.len(), c.cells);
        assert!(c.l2_err < 0.1);
    }

    #[test]
    fn scaling_slopes() {
        let s = sobolev_scaling("sinusoidal", 2.0, 1.0, 3.0, vec![0.2, 0.1, 0.05]).ok().unwrap();
        assert!((s.minus_half_slope - 1.5).abs() < 0.05 && s.satisfied());
    }

    #[test]
    fn fit_lands_near_the_cell_average() {
        let f = fit_coefficient("two-phase", 1.0, 3.0, 1.0, 0.025).ok().unwrap();
        assert!((f.s_hat - 2.0).abs() < 0.1, "{}", f.s_hat);
        assert_eq!(f.scan_s.len(), f.scan_objective.len());
    }
}
