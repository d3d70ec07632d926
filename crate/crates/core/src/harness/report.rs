//! CSV output for sweeps, single solves and estimate ledgers.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::estimates::EstimateReport;

use super::config::ComparisonMode;
use super::sweep::{ConvergenceReport, PointProfiles};

/// Round-trip formatting (17 significant digits).
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:.16e}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".into(), fmt_f64)
}

/// Writes `header` and `rows` to `path`, creating parent directories.
pub fn write_csv<S: AsRef<str>>(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<S>>) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.iter().map(|s| s.as_ref())).map_err(csv_err)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes columns of equal length under `header`.
pub fn write_columns(path: &Path, header: &[&str], columns: &[&[f64]]) -> Result<()> {
    let n = columns.first().map_or(0, |c| c.len());
    debug_assert!(columns.iter().all(|c| c.len() == n));
    write_csv(
        path,
        header,
        (0..n).map(|i| columns.iter().map(|c| fmt_f64(c[i])).collect::<Vec<_>>()),
    )
}

/// `estimate,lhs,rhs,slack,pass`; the additive allowance is folded into `rhs`.
pub fn write_estimates(path: &Path, reports: &[EstimateReport]) -> Result<()> {
    write_csv(
        path,
        &["estimate", "lhs", "rhs", "slack", "pass"],
        reports.iter().map(|r| {
            vec![
                r.name.clone(),
                fmt_f64(r.lhs),
                fmt_f64(r.rhs + r.extra),
                fmt_f64(r.slack),
                r.pass.to_string(),
            ]
        }),
    )
}

pub fn solution_file_name(eps: f64) -> String {
    format!("eps_{eps}.csv")
}

fn write_profiles(path: &Path, p: &PointProfiles) -> Result<()> {
    let mut header = vec!["x", "density", "flux", "second_moment", "zeta", "g_eps", "rho_limit"];
    let mut cols: Vec<&[f64]> = vec![&p.x, &p.density, &p.flux, &p.second_moment, &p.zeta, &p.g_eps, &p.rho_limit];
    if let Some(pw) = &p.rho_pointwise {
        header.push("rho_pointwise");
        cols.push(pw);
    }
    write_columns(path, &header, &cols)
}

/// `report.csv` plus `solutions/eps_<value>.csv` for every solved point.
/// Skipped points appear in `report.csv` with their required cell count and
/// `checks_passed = skipped`.
pub fn write_report(dir: &Path, report: &ConvergenceReport) -> Result<()> {
    let m = report.test_functions;
    let weak_names: Vec<String> = (1..=m).map(|k| format!("weak_err_{k}")).collect();
    let mut header: Vec<&str> = vec!["eps", "beta", "nx", "l2_err"];
    header.extend(weak_names.iter().map(String::as_str));
    header.extend(["rate_so_far", "s_hat", "sigma_star", "sigma_harm", "checks_passed"]);
    let both = report.comparison == ComparisonMode::Both;
    if both {
        header.push("l2_err_pointwise");
    }

    let mut lines: Vec<(f64, Vec<String>)> = Vec::new();
    for r in &report.rows {
        let mut line = vec![fmt_f64(r.eps), fmt_f64(report.beta), r.nx.to_string(), fmt_f64(r.l2_err)];
        line.extend(r.weak_err.iter().map(|&w| fmt_f64(w)));
        line.extend([
            fmt_opt(r.rate_so_far),
            fmt_opt(r.s_hat),
            fmt_f64(report.sigma_star),
            fmt_f64(report.sigma_harm),
            r.checks_passed().to_string(),
        ]);
        if both {
            line.push(fmt_opt(r.l2_err_pointwise));
        }
        lines.push((r.eps, line));
    }
    for s in &report.skipped {
        let mut line = vec![fmt_f64(s.eps), fmt_f64(report.beta), s.required_cells.to_string(), "nan".into()];
        line.extend(std::iter::repeat("nan".to_string()).take(m + 2));
        line.extend([fmt_f64(report.sigma_star), fmt_f64(report.sigma_harm), "skipped".into()]);
        if both {
            line.push("nan".into());
        }
        lines.push((s.eps, line));
    }
    lines.sort_by(|a, b| b.0.total_cmp(&a.0));
    write_csv(&dir.join("report.csv"), &header, lines.into_iter().map(|(_, l)| l))?;

    for r in &report.rows {
        write_profiles(&dir.join("solutions").join(solution_file_name(r.eps)), &r.profiles)?;
    }
    Ok(())
}
