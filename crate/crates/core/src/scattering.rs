//! Periodic scattering profiles `sigma(y)` and their oscillating
//! realizations `sigma_eps(x) = sigma(x / eps^beta)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::table::Table1d;

/// Panels used by the cell-average quadratures.
const AVERAGE_PANELS: usize = 1 << 14;

/// Width of the two-phase transition layer as a fraction of the period.
pub const TWO_PHASE_LAYER: f64 = 0.01;

/// Relative slack used by the hypothesis audit.
const AUDIT_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileShape {
    Constant(f64),
    /// `mean + amplitude * sin(2 pi y / period)`.
    Sinusoidal { mean: f64, amplitude: f64 },
    /// Two materials; `inner` occupies a band of width `inner_fraction * period`
    /// centred on `y = 0`, `outer` fills the rest. Interfaces are smoothed
    /// over a layer of width `TWO_PHASE_LAYER * period`.
    TwoPhase {
        outer: f64,
        inner: f64,
        inner_fraction: f64,
    },
    /// Linear interpolation of a table spanning exactly one period.
    Table(Table1d),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringProfile {
    shape: ProfileShape,
    period: f64,
    lower: f64,
    upper: f64,
    lipschitz: f64,
}

impl ScatteringProfile {
    pub fn constant(value: f64) -> Result<Self> {
        Self::from_shape(ProfileShape::Constant(value), 2.0 * PI)
    }

    pub fn sinusoidal(mean: f64, amplitude: f64, period: f64) -> Result<Self> {
        Self::from_shape(ProfileShape::Sinusoidal { mean, amplitude }, period)
    }

    /// `values[k]` occupies volume fraction `fractions[k]`; the second phase
    /// is centred on the origin so the profile is even.
    pub fn two_phase(values: [f64; 2], fractions: [f64; 2], period: f64) -> Result<Self> {
        if fractions.iter().any(|f| !(0.0..=1.0).contains(f))
            || (fractions[0] + fractions[1] - 1.0).abs() > 1e-12
        {
            return Err(Error::InvalidProfile(format!(
                "two-phase fractions must be nonnegative and sum to 1, got {fractions:?}"
            )));
        }
        let inner_fraction = fractions[1];
        if inner_fraction <= TWO_PHASE_LAYER || inner_fraction >= 1.0 - TWO_PHASE_LAYER {
            return Err(Error::InvalidProfile(format!(
                "two-phase fraction {inner_fraction} leaves no room for the transition layers"
            )));
        }
        Self::from_shape(
            ProfileShape::TwoPhase {
                outer: values[0],
                inner: values[1],
                inner_fraction,
            },
            period,
        )
    }

    /// The table must start at `y = 0`; its last abscissa is the period.
    pub fn table(table: Table1d) -> Result<Self> {
        let xs = table.xs();
        if xs[0] != 0.0 {
            return Err(Error::InvalidProfile(
                "profile table must start at y = 0".into(),
            ));
        }
        let period = xs[xs.len() - 1];
        Self::from_shape(ProfileShape::Table(table), period)
    }

    fn from_shape(shape: ProfileShape, period: f64) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::InvalidProfile(format!("period must be positive, got {period}")));
        }
        let (lower, upper, lipschitz) = match &shape {
            ProfileShape::Constant(v) => (*v, *v, 0.0),
            ProfileShape::Sinusoidal { mean, amplitude } => {
                let a = amplitude.abs();
                (mean - a, mean + a, a * 2.0 * PI / period)
            }
            ProfileShape::TwoPhase { outer, inner, .. } => (
                outer.min(*inner),
                outer.max(*inner),
                // smoothstep peaks at 3/2 of the mean ramp slope
                1.5 * (inner - outer).abs() / (TWO_PHASE_LAYER * period),
            ),
            ProfileShape::Table(t) => (t.min_value(), t.max_value(), t.max_slope()),
        };
        if !(lower > 0.0) || !upper.is_finite() {
            return Err(Error::InvalidProfile(format!(
                "profile must be bounded away from zero, got range [{lower}, {upper}]"
            )));
        }
        let profile = Self {
            shape,
            period,
            lower,
            upper,
            lipschitz,
        };
        let gap = match &profile.shape {
            ProfileShape::Table(t) => (t.ys()[0] - t.ys()[t.ys().len() - 1]).abs(),
            _ => (profile.eval(0.0) - profile.eval(period)).abs(),
        };
        if gap > 1e-12 {
            return Err(Error::InvalidProfile(format!(
                "profile is not periodic: |sigma(0) - sigma(P)| = {gap:.3e}"
            )));
        }
        Ok(profile)
    }

    /// Replaces the derived bounds with declared ones. They are not checked
    /// against the profile here; see [`verify_hypotheses`].
    pub fn with_declared_bounds(mut self, lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0 && lower <= upper) {
            return Err(Error::InvalidProfile(format!(
                "declared bounds must satisfy 0 < a <= b, got ({lower}, {upper})"
            )));
        }
        self.lower = lower;
        self.upper = upper;
        Ok(self)
    }

    pub fn shape(&self) -> &ProfileShape {
        &self.shape
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Declared lower bound `a`.
    pub fn lower(&self) -> f64 {
        self.lower
    }

    /// Declared upper bound `b`.
    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// Lipschitz constant `c` of the base profile.
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.shape, ProfileShape::Constant(_))
    }

    /// `sigma(y)`, wrapped periodically.
    pub fn eval(&self, y: f64) -> f64 {
        match &self.shape {
            ProfileShape::Constant(v) => *v,
            ProfileShape::Sinusoidal { mean, amplitude } => {
                mean + amplitude * (2.0 * PI * y / self.period).sin()
            }
            ProfileShape::TwoPhase {
                outer,
                inner,
                inner_fraction,
            } => {
                let p = self.period;
                // distance from the band centre in [0, p/2]
                let r = (y - p * (y / p).round()).abs();
                let edge = 0.5 * inner_fraction * p;
                let w = TWO_PHASE_LAYER * p;
                let t = ((r - (edge - 0.5 * w)) / w).clamp(0.0, 1.0);
                let s = t * t * (3.0 - 2.0 * t);
                inner + (outer - inner) * s
            }
            ProfileShape::Table(t) => {
                let yy = y.rem_euclid(self.period);
                t.eval(yy)
            }
        }
    }

    /// Cell average `(1/P) int_0^P sigma`, the weak-* limit of `sigma(x/eta)`.
    pub fn weak_star_limit(&self) -> f64 {
        if let ProfileShape::Constant(v) = self.shape {
            return v;
        }
        simpson(|y| self.eval(y), 0.0, self.period, AVERAGE_PANELS) / self.period
    }

    /// `P / int_0^P dy / sigma(y)`.
    pub fn harmonic_mean(&self) -> f64 {
        if let ProfileShape::Constant(v) = self.shape {
            return v;
        }
        self.period / simpson(|y| 1.0 / self.eval(y), 0.0, self.period, AVERAGE_PANELS)
    }
}

/// Composite Simpson rule with `panels` (even) sub-intervals.
pub(crate) fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

/// `sigma_eps(x) = sigma(x / eps^beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringField {
    profile: ScatteringProfile,
    epsilon: f64,
    beta: f64,
    eta: f64,
}

impl ScatteringField {
    pub fn new(profile: ScatteringProfile, epsilon: f64, beta: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidProblem(format!("epsilon must be positive, got {epsilon}")));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidProblem(format!("beta must be positive, got {beta}")));
        }
        Ok(Self {
            profile,
            epsilon,
            beta,
            eta: epsilon.powf(beta),
        })
    }

    pub fn profile(&self) -> &ScatteringProfile {
        &self.profile
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Heterogeneity length `eta = eps^beta`.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Period of `sigma_eps` in `x`.
    pub fn spatial_period(&self) -> f64 {
        self.eta * self.profile.period
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.profile.eval(x / self.eta)
    }

    /// Upper bound `c / eta` on `|d sigma_eps / dx|`.
    pub fn slope_bound(&self) -> f64 {
        self.profile.lipschitz / self.eta
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub min: f64,
    pub max: f64,
    pub max_slope: f64,
    pub lower: f64,
    pub upper: f64,
    pub slope_bound: f64,
    /// Positions where a bound or the slope inequality is violated.
    pub violations: Vec<f64>,
    pub pass: bool,
}

/// Audits `a <= sigma_eps <= b` and `|sigma_eps'| <= c / eta` on
/// `audit_points` uniformly spaced positions of `[lo, hi]` plus midpoints.
pub fn verify_hypotheses(
    field: &ScatteringField,
    lo: f64,
    hi: f64,
    audit_points: usize,
) -> Result<HypothesisReport> {
    if audit_points < 2 {
        return Err(Error::InvalidProblem(format!(
            "need at least 2 audit points, got {audit_points}"
        )));
    }
    if !(hi > lo) {
        return Err(Error::InvalidProblem(format!("empty audit interval [{lo}, {hi}]")));
    }
    let p = field.profile();
    let (a, b) = (p.lower(), p.upper());
    let slope_bound = field.slope_bound();
    let samples = 2 * (audit_points - 1) + 1;
    let dx = (hi - lo) / (samples - 1) as f64;

    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut max_slope: f64 = 0.0;
    let mut violations = Vec::new();
    let mut prev: Option<f64> = None;
    for k in 0..samples {
        let x = lo + k as f64 * dx;
        let s = field.evaluate(x);
        min = min.min(s);
        max = max.max(s);
        let mut bad = s < a * (1.0 - AUDIT_SLACK) || s > b * (1.0 + AUDIT_SLACK);
        if let Some(sp) = prev {
            let slope: f64 = ((s - sp) / dx).abs();
            max_slope = max_slope.max(slope);
            bad |= slope > slope_bound * (1.0 + AUDIT_SLACK);
        }
        if bad {
            violations.push(x);
        }
        prev = Some(s);
    }
    Ok(HypothesisReport {
        min,
        max,
        max_slope,
        lower: a,
        upper: b,
        slope_bound,
        pass: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_plus_sin() -> ScatteringProfile {
        ScatteringProfile::sinusoidal(2.0, 1.0, 2.0 * PI).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let c = ScatteringField::new(ScatteringProfile::constant(1.5).unwrap(), 0.3, 1.0).unwrap();
        for x in [-3.0, 0.0, 0.77] {
            assert_eq!(c.evaluate(x), 1.5);
        }
        let f = ScatteringField::new(two_plus_sin(), 0.1, 1.0).unwrap();
        assert_eq!(f.evaluate(0.0), 2.0);
        let f = ScatteringField::new(two_plus_sin(), 0.1, 2.0).unwrap();
        assert!((f.evaluate(0.5 * PI * 0.01) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn field_is_periodic_in_x() {
        let f = ScatteringField::new(two_plus_sin(), 0.1, 1.5).unwrap();
        let period = f.spatial_period();
        for k in 0..50 {
            let x = -1.0 + 0.037 * k as f64;
            assert!((f.evaluate(x) - f.evaluate(x + period)).abs() < 1e-12);
        }
    }

    /// Plain midpoint rule with many cells, independent of the Simpson path.
    fn midpoint_mean(f: impl Fn(f64) -> f64, p: f64) -> f64 {
        let n = 1_000_000;
        let h = p / n as f64;
        (0..n).map(|k| f((k as f64 + 0.5) * h)).sum::<f64>() * h / p
    }

    #[test]
    fn cell_averages() {
        let c = ScatteringProfile::constant(1.5).unwrap();
        assert_eq!(c.weak_star_limit(), 1.5);
        assert_eq!(c.harmonic_mean(), 1.5);

        let s = two_plus_sin();
        assert!((s.weak_star_limit() - 2.0).abs() < 1e-12);
        let oracle = 1.0 / midpoint_mean(|y| 1.0 / (2.0 + y.sin()), 2.0 * PI);
        assert!((oracle - 3f64.sqrt()).abs() < 1e-9);
        assert!((s.harmonic_mean() - 3f64.sqrt()).abs() < 1e-10);

        let tp = ScatteringProfile::two_phase([1.0, 3.0], [0.5, 0.5], 2.0 * PI).unwrap();
        assert!((tp.weak_star_limit() - 2.0).abs() < 1e-10);
        // the smoothed layers shift the harmonic mean slightly off 1.5
        assert!((tp.harmonic_mean() - 1.5).abs() < 1e-2);
        let oracle = 1.0 / midpoint_mean(|y| 1.0 / tp.eval(y), 2.0 * PI);
        assert!((tp.harmonic_mean() - oracle).abs() < 1e-8);
    }

    #[test]
    fn jensen_ordering_on_builtin_profiles() {
        let profiles = [
            ScatteringProfile::constant(0.7).unwrap(),
            two_plus_sin(),
            ScatteringProfile::sinusoidal(5.0, -2.0, 1.0).unwrap(),
            ScatteringProfile::two_phase([1.0, 3.0], [0.5, 0.5], 2.0 * PI).unwrap(),
            ScatteringProfile::two_phase([4.0, 0.5], [0.3, 0.7], 3.0).unwrap(),
        ];
        for p in &profiles {
            let (h, m) = (p.harmonic_mean(), p.weak_star_limit());
            assert!(p.lower() <= h + 1e-12 && h <= m + 1e-12 && m <= p.upper() + 1e-12);
            if p.is_constant() {
                assert_eq!(h, m);
            } else {
                assert!(m - h > 1e-3);
            }
        }
    }

    #[test]
    fn two_phase_is_even_and_bounded() {
        let tp = ScatteringProfile::two_phase([1.0, 3.0], [0.5, 0.5], 2.0 * PI).unwrap();
        for k in 0..200 {
            let y = 0.031 * k as f64;
            assert!((tp.eval(y) - tp.eval(-y)).abs() < 1e-12);
            assert!((1.0..=3.0).contains(&tp.eval(y)));
        }
        assert_eq!(tp.eval(0.0), 3.0);
        assert_eq!(tp.eval(PI), 1.0);
        assert!(ScatteringProfile::two_phase([1.0, 3.0], [0.6, 0.6], 1.0).is_err());
        assert!(ScatteringProfile::two_phase([1.0, 3.0], [0.999, 0.001], 1.0).is_err());
    }

    #[test]
    fn rejects_nonpositive_profiles() {
        assert!(ScatteringProfile::constant(0.0).is_err());
        assert!(ScatteringProfile::sinusoidal(1.0, 1.0, 1.0).is_err());
        assert!(ScatteringProfile::sinusoidal(2.0, 1.0, -1.0).is_err());
        let t = Table1d::new(vec![0.0, 1.0, 2.0], vec![1.0, 2.0, 1.5]).unwrap();
        assert!(ScatteringProfile::table(t).is_err());
    }

    #[test]
    fn table_profile_wraps() {
        let t = Table1d::new(vec![0.0, 1.0, 2.0], vec![1.0, 3.0, 1.0]).unwrap();
        let p = ScatteringProfile::table(t).unwrap();
        assert_eq!(p.period(), 2.0);
        assert_eq!(p.eval(2.5), 2.0);
        assert_eq!(p.eval(-0.5), 2.0);
        assert!((p.weak_star_limit() - 2.0).abs() < 1e-12);
        assert_eq!(p.lipschitz(), 2.0);
    }

    #[test]
    fn hypothesis_audit() {
        let c = ScatteringField::new(ScatteringProfile::constant(1.5).unwrap(), 0.1, 2.0).unwrap();
        let r = verify_hypotheses(&c, -1.0, 1.0, 1000).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_slope, 0.0);

        let f = ScatteringField::new(two_plus_sin(), 0.1, 1.0).unwrap();
        let r = verify_hypotheses(&f, -1.0, 1.0, 20_001).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.max_slope - 10.0).abs() / 10.0 < 0.02, "{}", r.max_slope);

        let tight = ScatteringField::new(two_plus_sin().with_declared_bounds(1.5, 2.5).unwrap(), 0.1, 1.0)
            .unwrap();
        let r = verify_hypotheses(&tight, -1.0, 1.0, 20_001).unwrap();
        assert!(!r.pass);
        for &x in &r.violations {
            assert!((x / 0.1).sin().abs() > 0.5, "violation at {x}");
        }
        assert!(verify_hypotheses(&f, -1.0, 1.0, 1).is_err());

        let tp = ScatteringProfile::two_phase([1.0, 3.0], [0.5, 0.5], 2.0 * PI).unwrap();
        let f = ScatteringField::new(tp, 0.05, 1.0).unwrap();
        assert!(verify_hypotheses(&f, -1.0, 1.0, 200_001).unwrap().pass);
    }
}
