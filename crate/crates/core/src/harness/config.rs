//! Sweep configuration read from a flat `key = value` text file.
//!
//! Lines starting with `#` are comments, lists are comma separated and
//! relative table paths resolve against the directory of the config file.
//!
//! ```text
//! sigma.kind = sinusoidal        # constant | sinusoidal | two-phase | user-table
//! sigma.mean = 2
//! sigma.amplitude = 1
//! beta = 1
//! eps = 0.2, 0.1, 0.05, 0.025
//! source.kind = constant         # constant | gaussian-bump | user-table
//! comparison = weak-star         # weak-star | pointwise-sigma-bar | both
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::diffusion::{build_limit_problem, DiffusionProblem, LimitCoefficient};
use crate::error::{Error, Result};
use crate::estimates::SigmaBar;
use crate::grid::SlabGrid;
use crate::kinetic::{KineticProblem, SolverOptions, CELLS_PER_PERIOD};
use crate::scattering::{ScatteringField, ScatteringProfile};
use crate::table::Table1d;
use crate::velocity::{QuadratureFamily, VelocityQuadrature};

/// Hard cap on the number of cells per sweep point.
pub const MAX_CELLS: usize = 1 << 22;
pub const DEFAULT_EPS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];
pub const BUMP_WIDTH: f64 = 0.08;

#[derive(Debug, Clone, PartialEq)]
pub enum SourceSpec {
    Constant(f64),
    /// `amplitude * exp(-x^2 / width)`.
    GaussianBump { amplitude: f64, width: f64 },
    Table(Table1d),
}

impl SourceSpec {
    pub fn sample(&self, grid: &SlabGrid) -> Vec<f64> {
        grid.centers()
            .iter()
            .map(|&x| match self {
                Self::Constant(c) => *c,
                Self::GaussianBump { amplitude, width } => amplitude * (-x * x / width).exp(),
                Self::Table(t) => t.eval(x),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonMode {
    WeakStar,
    PointwiseSigmaBar,
    Both,
}

impl FromStr for ComparisonMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak-star" => Ok(Self::WeakStar),
            "pointwise-sigma-bar" => Ok(Self::PointwiseSigmaBar),
            "both" => Ok(Self::Both),
            other => Err(Error::InvalidConfig(format!("unknown comparison mode `{other}`"))),
        }
    }
}

impl fmt::Display for ComparisonMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::WeakStar => "weak-star",
            Self::PointwiseSigmaBar => "pointwise-sigma-bar",
            Self::Both => "both",
        })
    }
}

/// Cell width `h <= min(eta P / cells_per_period, layer_factor * eps^2)`,
/// at least `min_cells` cells, at most `max_cells`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolutionRule {
    pub cells_per_period: f64,
    pub layer_factor: f64,
    pub min_cells: usize,
    pub max_cells: usize,
}

impl Default for ResolutionRule {
    fn default() -> Self {
        Self {
            cells_per_period: CELLS_PER_PERIOD,
            layer_factor: 0.25,
            min_cells: 16,
            max_cells: MAX_CELLS,
        }
    }
}

impl ResolutionRule {
    /// Required cell count; may exceed `max_cells`, in which case the point
    /// is skipped by the caller.
    pub fn cells(&self, field: &ScatteringField, half_length: f64) -> usize {
        let eps = field.epsilon();
        let mut h = self.layer_factor * eps * eps;
        if !field.profile().is_constant() {
            h = h.min(field.spatial_period() / self.cells_per_period);
        }
        // absorb rounding so an exact ratio is not bumped to the next integer
        let n = (2.0 * half_length / h * (1.0 - 1e-10)).ceil();
        if n > usize::MAX as f64 / 2.0 {
            return usize::MAX;
        }
        (n as usize).max(self.min_cells)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub profile: ScatteringProfile,
    pub beta: f64,
    pub half_length: f64,
    pub source: SourceSpec,
    pub quadrature: VelocityQuadrature,
    pub eps: Vec<f64>,
    pub resolution: ResolutionRule,
    pub solver: SolverOptions,
    pub comparison: ComparisonMode,
    pub test_functions: usize,
    /// Reference coefficient for the pointwise comparison; the weak-star
    /// value when not given.
    pub sigma_bar: Option<SigmaBar>,
}

impl SweepConfig {
    /// Defaults for everything except the profile.
    pub fn new(profile: ScatteringProfile) -> Self {
        Self {
            profile,
            beta: 1.0,
            half_length: 1.0,
            source: SourceSpec::Constant(1.0),
            quadrature: VelocityQuadrature::default_uniform(),
            eps: DEFAULT_EPS.to_vec(),
            resolution: ResolutionRule::default(),
            solver: SolverOptions::default(),
            comparison: ComparisonMode::WeakStar,
            test_functions: 8,
            sigma_bar: None,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let entries = Entries::parse(text)?;
        let config = entries.build(base_dir)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.eps.is_empty() {
            return bad("eps list is empty".into());
        }
        if let Some(e) = self.eps.iter().find(|e| !(**e > 0.0 && **e <= 1.0)) {
            return bad(format!("every eps must lie in (0, 1], got {e}"));
        }
        if self.eps.windows(2).any(|w| w[1] >= w[0]) {
            return bad(format!("eps list must be strictly decreasing, got {:?}", self.eps));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return bad(format!("beta must be positive, got {}", self.beta));
        }
        if !(self.half_length > 0.0 && self.half_length.is_finite()) {
            return bad(format!("half_length must be positive, got {}", self.half_length));
        }
        if self.test_functions == 0 {
            return bad("test_functions must be at least 1".into());
        }
        let r = &self.resolution;
        if !(r.cells_per_period >= CELLS_PER_PERIOD) {
            return bad(format!(
                "resolution.cells_per_period must be at least {CELLS_PER_PERIOD}, got {}",
                r.cells_per_period
            ));
        }
        if !(r.layer_factor > 0.0 && r.layer_factor.is_finite()) {
            return bad(format!("resolution.layer_factor must be positive, got {}", r.layer_factor));
        }
        if r.max_cells > MAX_CELLS {
            return bad(format!("resolution.max_cells may not exceed {MAX_CELLS}"));
        }
        if r.min_cells < crate::grid::MIN_CELLS || r.min_cells > r.max_cells {
            return bad(format!(
                "resolution.min_cells must lie in [{}, max_cells], got {}",
                crate::grid::MIN_CELLS,
                r.min_cells
            ));
        }
        if !(self.solver.tol > 0.0 && self.solver.tol <= 1e-4) || self.solver.max_iter == 0 {
            return bad("solver.tol must lie in (0, 1e-4] and solver.max_iter be positive".into());
        }
        Ok(())
    }

    pub fn field(&self, eps: f64) -> Result<ScatteringField> {
        ScatteringField::new(self.profile.clone(), eps, self.beta)
    }

    pub fn grid(&self, eps: f64) -> Result<SlabGrid> {
        let n = self.resolution.cells(&self.field(eps)?, self.half_length);
        if n > self.resolution.max_cells {
            return Err(Error::InvalidProblem(format!(
                "eps = {eps} needs {n} cells, above the limit of {}",
                self.resolution.max_cells
            )));
        }
        SlabGrid::new(self.half_length, n)
    }

    pub fn kinetic_problem(&self, eps: f64) -> Result<KineticProblem> {
        let grid = self.grid(eps)?;
        let source = self.source.sample(&grid);
        KineticProblem::new(grid, self.quadrature.clone(), self.field(eps)?, source)
    }

    /// The weak-star limit problem on `grid`.
    pub fn weak_star_problem(&self, grid: &SlabGrid) -> Result<DiffusionProblem> {
        build_limit_problem(
            &self.quadrature,
            LimitCoefficient::WeakStar(&self.profile),
            grid,
            self.source.sample(grid),
        )
    }

    /// The limit problem with coefficient `<v^2> / sigma_bar(x)`.
    pub fn pointwise_problem(&self, grid: &SlabGrid) -> Result<DiffusionProblem> {
        let sigma_bar = self.sigma_bar_or_default();
        let eval = |x: f64| sigma_bar.eval(x);
        build_limit_problem(
            &self.quadrature,
            LimitCoefficient::PointwiseSigmaBar(&eval),
            grid,
            self.source.sample(grid),
        )
    }

    pub fn sigma_bar_or_default(&self) -> SigmaBar {
        self.sigma_bar
            .clone()
            .unwrap_or_else(|| SigmaBar::Constant(self.profile.weak_star_limit()))
    }
}

/// Raw `key -> (line, value)` pairs.
struct Entries(BTreeMap<String, (usize, String)>);

const KEYS: &[&str] = &[
    "quadrature.family",
    "quadrature.n",
    "sigma.kind",
    "sigma.value",
    "sigma.mean",
    "sigma.amplitude",
    "sigma.period",
    "sigma.values",
    "sigma.fractions",
    "sigma.table_path",
    "sigma.bounds",
    "sigma_bar.value",
    "sigma_bar.table_path",
    "beta",
    "half_length",
    "source.kind",
    "source.value",
    "source.width",
    "source.table_path",
    "eps",
    "resolution.cells_per_period",
    "resolution.layer_factor",
    "resolution.min_cells",
    "resolution.max_cells",
    "solver.tol",
    "solver.max_iter",
    "solver.accelerate",
    "comparison",
    "test_functions",
];

impl Entries {
    fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Config {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            })?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::Config {
                    line,
                    message: format!("unknown key `{key}`"),
                });
            }
            if let Some((first, _)) = map.insert(key.to_string(), (line, value.trim().to_string())) {
                return Err(Error::Config {
                    line,
                    message: format!("`{key}` already set on line {first}"),
                });
            }
        }
        Ok(Self(map))
    }

    fn raw(&self, key: &str) -> Option<(usize, &str)> {
        self.0.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.raw(key)
            .map(|(line, v)| {
                v.parse::<T>().map_err(|e| Error::Config {
                    line,
                    message: format!("`{key}`: cannot parse `{v}`: {e}"),
                })
            })
            .transpose()
    }

    fn require<T: FromStr>(&self, key: &str, context: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        self.get(key)?
            .ok_or_else(|| Error::InvalidConfig(format!("`{key}` is required {context}")))
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.raw(key)
            .map(|(line, v)| {
                v.split(',')
                    .map(|item| {
                        item.trim().parse::<f64>().map_err(|e| Error::Config {
                            line,
                            message: format!("`{key}`: cannot parse `{}`: {e}", item.trim()),
                        })
                    })
                    .collect()
            })
            .transpose()
    }

    fn pair(&self, key: &str) -> Result<Option<[f64; 2]>> {
        match self.list(key)? {
            None => Ok(None),
            Some(v) if v.len() == 2 => Ok(Some([v[0], v[1]])),
            Some(v) => Err(Error::Config {
                line: self.raw(key).map_or(0, |r| r.0),
                message: format!("`{key}` needs two values, got {}", v.len()),
            }),
        }
    }

    fn path(&self, key: &str, base: &Path) -> Option<PathBuf> {
        self.raw(key).map(|(_, v)| base.join(v))
    }

    fn table(&self, key: &str, base: &Path, context: &str) -> Result<Table1d> {
        let path = self
            .path(key, base)
            .ok_or_else(|| Error::InvalidConfig(format!("`{key}` is required {context}")))?;
        Table1d::from_csv(&path)
    }

    fn profile(&self, base: &Path) -> Result<ScatteringProfile> {
        let kind: String = self.require("sigma.kind", "")?;
        let period = self.get("sigma.period")?.unwrap_or(2.0 * std::f64::consts::PI);
        let profile = match kind.as_str() {
            "constant" => {
                let v = match self.get("sigma.value")? {
                    Some(v) => v,
                    None => self.require("sigma.mean", "for a constant profile")?,
                };
                ScatteringProfile::constant(v)?
            }
            "sinusoidal" => ScatteringProfile::sinusoidal(
                self.require("sigma.mean", "for a sinusoidal profile")?,
                self.require("sigma.amplitude", "for a sinusoidal profile")?,
                period,
            )?,
            "two-phase" => {
                let values = self
                    .pair("sigma.values")?
                    .ok_or_else(|| Error::InvalidConfig("`sigma.values` is required for a two-phase profile".into()))?;
                let fractions = self.pair("sigma.fractions")?.unwrap_or([0.5, 0.5]);
                ScatteringProfile::two_phase(values, fractions, period)?
            }
            "user-table" => ScatteringProfile::table(self.table("sigma.table_path", base, "for a table profile")?)?,
            other => return Err(Error::InvalidConfig(format!("unknown sigma.kind `{other}`"))),
        };
        match self.pair("sigma.bounds")? {
            Some([a, b]) => profile.with_declared_bounds(a, b),
            None => Ok(profile),
        }
    }

    fn source(&self, base: &Path) -> Result<SourceSpec> {
        let kind: String = self.get("source.kind")?.unwrap_or_else(|| "constant".into());
        Ok(match kind.as_str() {
            "constant" => SourceSpec::Constant(self.get("source.value")?.unwrap_or(1.0)),
            "gaussian-bump" => SourceSpec::GaussianBump {
                amplitude: self.get("source.value")?.unwrap_or(1.0),
                width: self.get("source.width")?.unwrap_or(BUMP_WIDTH),
            },
            "user-table" => SourceSpec::Table(self.table("source.table_path", base, "for a table source")?),
            other => return Err(Error::InvalidConfig(format!("unknown source.kind `{other}`"))),
        })
    }

    fn build(&self, base: &Path) -> Result<SweepConfig> {
        let mut c = SweepConfig::new(self.profile(base)?);
        let family: QuadratureFamily = self
            .get("quadrature.family")?
            .unwrap_or(QuadratureFamily::GaussLegendreUniform);
        let n = self.get("quadrature.n")?.unwrap_or(16);
        c.quadrature = VelocityQuadrature::build(family, n)?;
        c.source = self.source(base)?;
        if let Some(v) = self.get("beta")? {
            c.beta = v;
        }
        if let Some(v) = self.get("half_length")? {
            c.half_length = v;
        }
        if let Some(v) = self.list("eps")? {
            c.eps = v;
        }
        let r = &mut c.resolution;
        if let Some(v) = self.get("resolution.cells_per_period")? {
            r.cells_per_period = v;
        }
        if let Some(v) = self.get("resolution.layer_factor")? {
            r.layer_factor = v;
        }
        if let Some(v) = self.get("resolution.min_cells")? {
            r.min_cells = v;
        }
        if let Some(v) = self.get("resolution.max_cells")? {
            r.max_cells = v;
        }
        if let Some(v) = self.get("solver.tol")? {
            c.solver.tol = v;
        }
        if let Some(v) = self.get("solver.max_iter")? {
            c.solver.max_iter = v;
        }
        if let Some(v) = self.get("solver.accelerate")? {
            c.solver.accelerate = v;
        }
        if let Some(v) = self.get("comparison")? {
            c.comparison = v;
        }
        if let Some(v) = self.get("test_functions")? {
            c.test_functions = v;
        }
        c.sigma_bar = match (self.get::<f64>("sigma_bar.value")?, self.path("sigma_bar.table_path", base)) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidConfig(
                    "give either sigma_bar.value or sigma_bar.table_path, not both".into(),
                ))
            }
            (Some(v), None) => Some(SigmaBar::Constant(v)),
            (None, Some(p)) => Some(SigmaBar::Table(Table1d::from_csv(&p)?)),
            (None, None) => None,
        };
        Ok(c)
    }
}
