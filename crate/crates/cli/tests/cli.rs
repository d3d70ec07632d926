use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const CONFIG: &str = "sigma.kind = sinusoidal\nsigma.mean = 2\nsigma.amplitude = 1\nbeta = 1\neps = 0.2, 0.1\n";

fn lbh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lbh")).args(args).output().unwrap()
}

fn config(dir: &Path, text: &str) -> String {
    let path = dir.join("sweep.cfg");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn out(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

#[test]
fn solve_kinetic_writes_moments_at_the_smallest_eps() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), CONFIG);
    let o = lbh(&["solve-kinetic", "--config", &cfg, "--out", &out(dir.path(), "k.csv")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("k.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,density,flux,second_moment,zeta,g_eps");
    assert_eq!(lines.count(), 800);
}

#[test]
fn solve_diffusion_modes_agree_for_a_constant_reference() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), CONFIG);
    let a = out(dir.path(), "a.csv");
    let b = out(dir.path(), "b.csv");
    assert!(lbh(&["solve-diffusion", "--config", &cfg, "--out", &a, "--eps", "0.2"]).status.success());
    assert!(lbh(&[
        "solve-diffusion", "--config", &cfg, "--out", &b, "--eps", "0.2",
        "--coefficient", "pointwise-sigma-bar",
    ])
    .status
    .success());
    let a = fs::read_to_string(a).unwrap();
    assert!(a.starts_with("x,rho\n"));
    assert_eq!(a.lines().count(), 201);
    assert_eq!(a, fs::read_to_string(b).unwrap());
}

#[test]
fn check_estimates_passes_and_lists_every_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), CONFIG);
    let path = out(dir.path(), "e.csv");
    let o = lbh(&["check-estimates", "--config", &cfg, "--out", &path]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("estimate,lhs,rhs,slack,pass\n"));
    assert!(text.contains("entropy@eps=0.2,") && text.contains("entropy@eps=0.1,"));
    assert!(text.lines().last().unwrap().starts_with("g_eps_uniform,"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn norms_reports_slope_and_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let path = out(dir.path(), "n.csv");
    let o = lbh(&["norms", "--profile", "sinusoidal:2,1", "--beta", "3", "--order", "-0.5", "--out", &path]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("fourier: slope 1.5000, condition satisfied"), "{stdout}");
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("eps,order,mode,samples,value\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 4);

    let o = lbh(&["norms", "--profile", "two-phase:1,3", "--beta", "1", "--order", "-0.5", "--out", &path]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("condition not satisfied"));
}

#[test]
fn norms_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = out(dir.path(), "n.csv");
    assert!(!lbh(&["norms", "--profile", "wobbly:1", "--beta", "1", "--order", "-0.5", "--out", &path]).status.success());
    assert!(!lbh(&["norms", "--profile", "constant:2", "--beta", "1", "--order", "0.25", "--out", &path]).status.success());
}

#[test]
fn sweep_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), CONFIG);
    let od = out(dir.path(), "ok");
    assert_eq!(lbh(&["sweep", "--config", &cfg, "--out-dir", &od]).status.code(), Some(0));
    assert!(dir.path().join("ok/report.csv").exists());
    assert!(dir.path().join("ok/solutions/eps_0.1.csv").exists());

    let cfg = config(dir.path(), &format!("{CONFIG}resolution.max_cells = 500\n"));
    let od = out(dir.path(), "skip");
    assert_eq!(lbh(&["sweep", "--config", &cfg, "--out-dir", &od]).status.code(), Some(2));
    let report = fs::read_to_string(dir.path().join("skip/report.csv")).unwrap();
    assert!(report.lines().last().unwrap().ends_with(",skipped"));

    let cfg = config(dir.path(), "sigma.kind = constant\nsigma.value = -1\n");
    let od = out(dir.path(), "bad");
    assert_eq!(lbh(&["sweep", "--config", &cfg, "--out-dir", &od]).status.code(), Some(1));
}

#[test]
fn shipped_configs_load() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(root).unwrap() {
        let cfg = entry.unwrap().path();
        let o = lbh(&[
            "solve-diffusion", "--config", cfg.to_str().unwrap(), "--eps", "0.2",
            "--out", &out(dir.path(), "d.csv"),
        ]);
        assert!(o.status.success(), "{}: {}", cfg.display(), String::from_utf8_lossy(&o.stderr));
    }
}
