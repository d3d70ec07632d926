//! Sweeps over `eps`: configuration, orchestration, fits and CSV reports.

pub mod config;
pub mod fit;
pub mod report;
pub mod sweep;

pub use config::{ComparisonMode, ResolutionRule, SourceSpec, SweepConfig};
pub use fit::{fit_effective_coefficient, fit_rate, EffectiveFit};
pub use sweep::{run_sweep, ConvergenceReport, ReportRow, SkippedPoint, SweepAbort};
