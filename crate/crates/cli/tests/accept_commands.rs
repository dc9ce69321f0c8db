use std::fs;
use std::process::Command;

use oscbath_cli::config::{Approach, Mode, RunConfig, Settings};
use oscbath_cli::csv::{read_occupation, OCCUPATION_HEADER};
use oscbath_cli::run;
use oscbath_cli::verify::{run_criterion, Level};

fn oscbath(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_oscbath")).args(args).output().unwrap()
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn config_round_trip() {
    let text = "# cavity run\napproach = dressed\nmode = cavity\ng = 0.05\nR = 40 # radius\nN = 64\nsteps = 7\nt_end = 9.5\nlog_grid = true\nabs_tol = 1e-10\n";
    let cfg = RunConfig::parse(text).unwrap();
    assert_eq!(cfg.approach, Approach::Dressed);
    assert_eq!(cfg.mode, Mode::Cavity);
    assert_eq!(cfg.cavity.unwrap().modes, 64);
    let again = RunConfig::parse(&cfg.to_config_string()).unwrap();
    assert_eq!(cfg, again);
    assert_eq!(cfg.times(), again.times());
}

#[test]
fn config_errors() {
    for bad in [
        "mode = cavity\nN = 8\n",
        "t_start = 5\nt_end = 5\n",
        "steps = 1\n",
        "flavour = strange\n",
        "g = abc\n",
        "approach = quantum\n",
        "omega0 = 2\n",
        "log_grid = true\nt_start = 0\n",
        "beta = -1\n",
    ] {
        assert!(RunConfig::parse(bad).is_err(), "{bad:?}");
    }
}

#[test]
fn flags_override_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "g = 0\nsteps = 3\nt_end = 4\n").unwrap();
    let o = oscbath(&["simulate", "--config", cfg.to_str().unwrap(), "--n0", "2.5"]);
    assert!(o.status.success());
    let rows = read_occupation(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|&(_, n)| n == 2.5));
}

#[test]
fn grid_shapes() {
    let mut s = Settings::default();
    s.set("t_start", 1);
    s.set("t_end", 100);
    s.set("steps", 3);
    let cfg = RunConfig::from_settings(&s).unwrap();
    assert_eq!(cfg.times(), vec![1.0, 50.5, 100.0]);
    s.set("log_grid", "true");
    let t = RunConfig::from_settings(&s).unwrap().times();
    assert!((t[1] - 10.0).abs() < 1e-12 && t[2] == 100.0);
}

#[test]
fn simulate_writes_csv_and_sidecars() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1.csv");
    let args = ["simulate", "--approach", "bare", "--t-end", "10", "--steps", "4", "--output", out.to_str().unwrap()];
    assert!(oscbath(&args).status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with(&format!("{OCCUPATION_HEADER}\n")));
    assert!(!text.contains('\r') && !text.lines().any(|l| l.ends_with(' ')));
    assert_eq!(text.lines().count(), 5);
    assert!(fs::read_to_string(dir.path().join("fig1.plot.py")).unwrap().contains("fig1.csv"));
    // the effective config reproduces the run bit for bit
    let out2 = dir.path().join("again.csv");
    let cfg = dir.path().join("fig1.cfg");
    let o = oscbath(&["simulate", "--config", cfg.to_str().unwrap(), "--output", out2.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(text, fs::read_to_string(&out2).unwrap());
}

#[test]
fn simulate_is_deterministic() {
    let args = ["simulate", "--approach", "dressed", "--t-end", "6", "--steps", "5"];
    let a = oscbath(&args);
    let b = oscbath(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn decoupled_continuum_is_constant() {
    let o = oscbath(&["simulate", "--approach", "bare", "--g", "0", "--n0", "1.25", "--steps", "6"]);
    assert!(o.status.success());
    for (_, n) in read_occupation(&stdout(&o)).unwrap() {
        assert_eq!(n, 1.25);
    }
    let text = stdout(&o);
    let vacuum: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert!(vacuum.iter().all(|v| *v == "0"));
}

#[test]
fn spectrum_command() {
    let o = oscbath(&["spectrum", "--mode", "cavity", "--g", "0", "--R", "3.14159", "--N", "3", "--omega-bar", "0.5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,Omega_r,t0_r"));
    let omegas: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(omegas[0], 0.5);
    assert_eq!(omegas.len(), 4);

    // N = 2 against the dense oracle
    let cfg = RunConfig::parse("mode = cavity\nR = 2\nN = 2\n").unwrap();
    let b = run::spectrum(&cfg).unwrap();
    let d = oscbath::solve_spectrum(cfg.cavity.as_ref().unwrap(), &cfg.params, oscbath::SpectrumMethod::DenseEigenOracle).unwrap();
    for r in 0..3 {
        assert!((b.omega(r) - d.omega(r)).abs() < 1e-12);
        assert!(b.residual(r).abs() < 1e-10);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(oscbath(&["simulate", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(oscbath(&["simulate", "--mode", "cavity"]).status.code(), Some(2));
    assert_eq!(oscbath(&["spectrum", "--mode", "continuum"]).status.code(), Some(2));
    // ω₀² < Nη²: runaway mode
    let o = oscbath(&["spectrum", "--mode", "cavity", "--R", "10", "--N", "50", "--omega0", "0.5"]);
    assert_eq!(o.status.code(), Some(4));
    // an impossible tolerance budget
    let o = oscbath(&["simulate", "--approach", "dressed", "--abs-tol", "1e-300", "--rel-tol", "1e-300", "--steps", "2", "--t-end", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("t = "));
}

#[test]
fn compare_command() {
    let o = oscbath(&["compare", "--approach-a", "bare", "--approach-b", "bare", "--steps", "3", "--t-end", "5"]);
    assert!(o.status.success());
    for l in stdout(&o).lines().skip(1) {
        assert!(l.ends_with(",0"));
    }
    let o = oscbath(&["compare", "--approach-a", "bare", "--approach-b", "dressed", "--g", "0", "--steps", "4"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("max |diff| = 0,"));

    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("b.cfg");
    fs::write(&b, "steps = 9\n").unwrap();
    let o = oscbath(&["compare", "--config-b", b.to_str().unwrap(), "--steps", "4"]);
    assert!(o.status.success(), "flags apply to both runs");
    let o = oscbath(&["compare", "--config-b", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cavity_against_continuum_bare() {
    // t < 2R/c; cutoff high enough for the bare thermal term
    let a = RunConfig::parse("mode = cavity\nR = 40\nN = 1000\nt_start = 0.5\nt_end = 2\nsteps = 4\nbeta = 2\n").unwrap();
    let b = RunConfig::parse("t_start = 0.5\nt_end = 2\nsteps = 4\n").unwrap();
    let s = run::simulate(&a).unwrap();
    let c = run::simulate(&b).unwrap();
    for i in 0..4 {
        // finite n0 carries the vacuum term; the renormalized continuum does not
        let fin = s.total[i] - s.vacuum_term[i];
        assert!((fin - c.total[i]).abs() < 2e-2, "t={}: {fin} vs {}", s.times[i], c.total[i]);
    }
}

#[test]
fn verify_fast_passes_and_fault_fails() {
    let o = oscbath(&["verify", "--level", "fast"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), Level::Fast.criteria().len());
    let o = oscbath(&["verify", "--level", "fast", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().all(|l| l.contains("[FAIL]")));
    assert!(!run_criterion(8, true).passed);
}
