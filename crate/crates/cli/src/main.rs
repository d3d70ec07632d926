use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use lbh_core::diffusion::solve_limit;
use lbh_core::estimates::{
    check_g_eps_uniform_norms, coefficient_deviation, EstimateReport, HHalfOptions, SigmaBar,
};
use lbh_core::harness::report::{fmt_f64, write_columns, write_csv, write_estimates, write_report};
use lbh_core::harness::sweep::run_checks;
use lbh_core::harness::{fit_rate, run_sweep, SweepConfig};
use lbh_core::kinetic::solve_steady;
use lbh_core::scattering::ScatteringProfile;
use lbh_core::sobolev::{sobolev_norm, NormMode, SobolevOrder};
use lbh_core::table::Table1d;

#[derive(Parser)]
#[command(name = "lbh", version, about = "Kinetic and diffusion-limit solver for the linear Boltzmann equation with oscillating scattering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the kinetic problem at one eps and write its moments.
    SolveKinetic {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Defaults to the smallest eps of the config.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Solve the diffusion limit on the grid used for one eps.
    SolveDiffusion {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, value_enum, default_value_t = Coefficient::WeakStar)]
        coefficient: Coefficient,
    },
    /// Run every estimate check on each eps of the config.
    CheckEstimates {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sobolev norms of (sigma_bar - sigma_eps) / sigma_bar over (0, L).
    Norms {
        /// `constant:V`, `sinusoidal:MEAN,AMP`, `two-phase:V0,V1` or `table:PATH`.
        #[arg(long)]
        profile: String,
        /// Period of the profile (ignored for tables).
        #[arg(long, default_value_t = 2.0 * std::f64::consts::PI)]
        period: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.1, 0.05, 0.025])]
        eps: Vec<f64>,
        /// One of -1, -0.5, 0.5.
        #[arg(long, allow_hyphen_values = true)]
        order: f64,
        /// Reference coefficient; the cell average of the profile by default.
        #[arg(long)]
        sigma_bar: Option<f64>,
        /// Window length L.
        #[arg(long, default_value_t = 2.0 * std::f64::consts::PI)]
        length: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an eps sweep and write report.csv and per-point solutions.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Coefficient {
    WeakStar,
    PointwiseSigmaBar,
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn load(path: &Path) -> Result<SweepConfig> {
    SweepConfig::from_file(path).with_context(|| format!("reading config {}", path.display()))
}

fn pick_eps(config: &SweepConfig, eps: Option<f64>) -> f64 {
    eps.unwrap_or_else(|| *config.eps.last().expect("validated config has eps"))
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::SolveKinetic { config, out, eps } => {
            let config = load(&config)?;
            let eps = pick_eps(&config, eps);
            let problem = config.kinetic_problem(eps)?;
            let sol = solve_steady(&problem, &config.solver)?;
            let stats = sol.stats();
            write_columns(
                &out,
                &["x", "density", "flux", "second_moment", "zeta", "g_eps"],
                &[
                    problem.grid().centers(),
                    &sol.density(),
                    &sol.flux(),
                    &sol.second_moment(),
                    &sol.zeta(),
                    &sol.g_eps(),
                ],
            )?;
            eprintln!(
                "eps = {eps}: {} cells, {} iterations, residual {:.2e}",
                problem.grid().cells(),
                stats.iterations,
                stats.residual
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::SolveDiffusion {
            config,
            out,
            eps,
            coefficient,
        } => {
            let config = load(&config)?;
            let grid = config.grid(pick_eps(&config, eps))?;
            let problem = match coefficient {
                Coefficient::WeakStar => config.weak_star_problem(&grid)?,
                Coefficient::PointwiseSigmaBar => config.pointwise_problem(&grid)?,
            };
            let sol = solve_limit(&problem)?;
            write_columns(&out, &["x", "rho"], &[grid.centers(), &sol.rho])?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckEstimates { config, out } => {
            let config = load(&config)?;
            let mut reports = Vec::new();
            let mut g_norms = Vec::new();
            for &eps in &config.eps {
                let problem = config.kinetic_problem(eps)?;
                let sol = solve_steady(&problem, &config.solver)?;
                g_norms.push((eps, problem.grid().l2_norm(&sol.g_eps())));
                reports.extend(run_checks(&sol).into_iter().map(|r| EstimateReport {
                    name: format!("{}@eps={eps}", r.name),
                    ..r
                }));
            }
            reports.push(check_g_eps_uniform_norms(&g_norms, config.beta)?);
            write_estimates(&out, &reports)?;
            let failed: Vec<&str> = reports
                .iter()
                .filter(|r| !r.pass && r.note.is_none())
                .map(|r| r.name.as_str())
                .collect();
            for r in reports.iter().filter(|r| r.note.is_some()) {
                eprintln!("{}: {}", r.name, r.note.as_deref().unwrap_or_default());
            }
            if failed.is_empty() {
                eprintln!("{} checks passed", reports.len());
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("failed: {}", failed.join(", "));
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Norms {
            profile,
            period,
            beta,
            eps,
            order,
            sigma_bar,
            length,
            out,
        } => norms(&profile, period, beta, &eps, order, sigma_bar, length, &out),
        Command::Sweep { config, out_dir } => {
            let config = load(&config)?;
            let (report, error) = match run_sweep(&config) {
                Ok(r) => (r, None),
                Err(abort) => (abort.report, Some(abort.error)),
            };
            write_report(&out_dir, &report)?;
            for s in &report.skipped {
                eprintln!("skipped eps = {}: needs {} cells", s.eps, s.required_cells);
            }
            if let Some(e) = error {
                eprintln!("sweep aborted: {e}");
                return Ok(ExitCode::FAILURE);
            }
            if let Some(rate) = report.fitted_rate {
                eprintln!("fitted rate {rate:.4}");
            }
            if let Some(s) = report.s_hat() {
                eprintln!(
                    "s_hat {s:.4} (sigma* {:.4}, harmonic {:.4})",
                    report.sigma_star, report.sigma_harm
                );
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
    }
}

fn parse_profile(spec: &str, period: f64) -> Result<ScatteringProfile> {
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    if kind == "table" {
        return Ok(ScatteringProfile::table(Table1d::from_csv(Path::new(args))?)?);
    }
    let values = args
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad number `{s}` in --profile")))
        .collect::<Result<Vec<f64>>>()?;
    Ok(match (kind, values.as_slice()) {
        ("constant", [v]) => ScatteringProfile::constant(*v)?,
        ("sinusoidal", [m, a]) => ScatteringProfile::sinusoidal(*m, *a, period)?,
        ("two-phase", [v0, v1]) => ScatteringProfile::two_phase([*v0, *v1], [0.5, 0.5], period)?,
        _ => bail!("cannot parse --profile `{spec}`"),
    })
}

#[allow(clippy::too_many_arguments)]
fn norms(
    profile: &str,
    period: f64,
    beta: f64,
    eps: &[f64],
    order: f64,
    sigma_bar: Option<f64>,
    length: f64,
    out: &Path,
) -> Result<ExitCode> {
    let profile = parse_profile(profile, period)?;
    let order = SobolevOrder::from_value(order)?;
    let bar = SigmaBar::Constant(sigma_bar.unwrap_or_else(|| profile.weak_star_limit()));
    let options = HHalfOptions {
        length,
        ..HHalfOptions::default()
    };
    let modes = [NormMode::Fourier, NormMode::DualityInterpolation];
    let mut rows = Vec::new();
    let mut series = vec![Vec::new(); modes.len()];
    for &e in eps {
        let samples = coefficient_deviation(&profile, &bar, beta, e, &options)?;
        for (k, mode) in modes.iter().enumerate() {
            let value = sobolev_norm(&samples, order, *mode).value;
            series[k].push((e, value));
            rows.push(vec![
                fmt_f64(e),
                fmt_f64(order.value()),
                mode.to_string(),
                samples.values().len().to_string(),
                fmt_f64(value),
            ]);
        }
    }
    write_csv(out, &["eps", "order", "mode", "samples", "value"], rows)?;
    for (mode, s) in modes.iter().zip(&series) {
        match fit_rate(s) {
            Ok(p) => {
                let verdict = if order == SobolevOrder::MinusHalf {
                    if p > 1.0 { ", condition satisfied" } else { ", condition not satisfied" }
                } else {
                    ""
                };
                println!("{mode}: slope {p:.4}{verdict}");
            }
            Err(e) => println!("{mode}: no slope ({e})"),
        }
    }
    Ok(ExitCode::SUCCESS)
}
