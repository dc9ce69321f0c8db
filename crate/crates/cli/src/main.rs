use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use oscbath_cli::config::{RunConfig, Settings};
use oscbath_cli::verify::{self, Level};
use oscbath_cli::{csv, plot, run, RunError};

#[derive(Parser)]
#[command(name = "oscbath", version, about = "Particle occupation of an oscillator coupled to an ohmic bath")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Occupation n0(t) on a time grid, as CSV (plus plot script and effective config)
    Simulate(RunArgs),
    /// Normal-mode frequencies and particle weights of a finite cavity
    Spectrum(RunArgs),
    /// Run the acceptance checks
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        level: VerifyLevel,
        /// Zero every tolerance (harness self-test; must exit 1)
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Run two configurations on the same grid and report |difference|
    Compare {
        /// Config file for run A
        #[arg(long)]
        config_a: Option<PathBuf>,
        /// Config file for run B
        #[arg(long)]
        config_b: Option<PathBuf>,
        #[arg(long)]
        approach_a: Option<String>,
        #[arg(long)]
        approach_b: Option<String>,
        #[arg(long)]
        mode_a: Option<String>,
        #[arg(long)]
        mode_b: Option<String>,
        /// Shared settings, applied to both runs
        #[command(flatten)]
        common: RunArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyLevel {
    Fast,
    Full,
}

#[derive(Args, Clone, Default)]
struct RunArgs {
    /// Flat `key = value` file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// bare | dressed
    #[arg(long)]
    approach: Option<String>,
    /// cavity | continuum
    #[arg(long)]
    mode: Option<String>,
    #[arg(long = "omega-bar")]
    omega_bar: Option<f64>,
    /// Bare particle frequency; ω̄² = ω0² − Nη² (cavity mode only)
    #[arg(long)]
    omega0: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    n0: Option<f64>,
    #[arg(long = "R")]
    radius: Option<f64>,
    #[arg(long = "c")]
    speed: Option<f64>,
    #[arg(long = "N")]
    modes: Option<usize>,
    #[arg(long)]
    t_start: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Output CSV path (stdout if absent)
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Geometric time grid
    #[arg(long)]
    log_grid: bool,
    /// pv | mode-sum (dressed continuum bath amplitudes)
    #[arg(long)]
    prescription: Option<String>,
}

impl RunArgs {
    fn settings(&self) -> Result<Settings, RunError> {
        let mut s = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| oscbath_cli::ConfigError(format!("{}: {e}", path.display())))?;
                Settings::parse(&text)?
            }
            None => Settings::default(),
        };
        let mut set = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                s.set(k, v);
            }
        };
        set("approach", self.approach.clone());
        set("mode", self.mode.clone());
        set("omega_bar", self.omega_bar.map(|v| v.to_string()));
        set("omega0", self.omega0.map(|v| v.to_string()));
        set("g", self.g.map(|v| v.to_string()));
        set("beta", self.beta.map(|v| v.to_string()));
        set("n0", self.n0.map(|v| v.to_string()));
        set("R", self.radius.map(|v| v.to_string()));
        set("c", self.speed.map(|v| v.to_string()));
        set("N", self.modes.map(|v| v.to_string()));
        set("t_start", self.t_start.map(|v| v.to_string()));
        set("t_end", self.t_end.map(|v| v.to_string()));
        set("steps", self.steps.map(|v| v.to_string()));
        set("output", self.output.as_ref().map(|p| p.display().to_string()));
        set("abs_tol", self.abs_tol.map(|v| v.to_string()));
        set("rel_tol", self.rel_tol.map(|v| v.to_string()));
        set("prescription", self.prescription.clone());
        if self.log_grid {
            s.set("log_grid", "true");
        }
        Ok(s)
    }

    fn config(&self) -> Result<RunConfig, RunError> {
        Ok(RunConfig::from_settings(&self.settings()?)?)
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), RunError> {
    match output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
    .map_err(|e| RunError::Config(oscbath_cli::ConfigError(format!("cannot write output: {e}"))))
}

fn simulate(args: &RunArgs) -> Result<(), RunError> {
    let cfg = args.config()?;
    let series = run::simulate(&cfg)?;
    emit(cfg.output.as_deref(), &csv::occupation_csv(&series))?;
    if let Some(path) = &cfg.output {
        emit(Some(&path.with_extension("plot.py")), &plot::plot_script(path, &cfg))?;
        emit(Some(&path.with_extension("cfg")), &cfg.to_config_string())?;
    }
    Ok(())
}

fn spectrum(args: &RunArgs) -> Result<(), RunError> {
    let cfg = args.config()?;
    let basis = run::spectrum(&cfg)?;
    emit(cfg.output.as_deref(), &csv::spectrum_csv(&basis))
}

fn compare(
    a: (&Option<PathBuf>, &Option<String>, &Option<String>),
    b: (&Option<PathBuf>, &Option<String>, &Option<String>),
    common: &RunArgs,
) -> Result<(), RunError> {
    let build = |(file, approach, mode): (&Option<PathBuf>, &Option<String>, &Option<String>)| {
        let mut s = match file {
            Some(f) => RunArgs { config: Some(f.clone()), ..Default::default() }.settings()?,
            None => Settings::default(),
        };
        let mut over = RunArgs { config: None, ..common.clone() };
        over.approach = approach.clone().or(over.approach);
        over.mode = mode.clone().or(over.mode);
        s.merge(&over.settings()?);
        s.0.remove("output");
        Ok::<_, RunError>(RunConfig::from_settings(&s)?)
    };
    let cmp = run::compare(&build(a)?, &build(b)?)?;
    emit(common.output.as_deref(), &csv::comparison_csv(&cmp))?;
    eprintln!("max |diff| = {}, mean |diff| = {}", cmp.max(), cmp.mean());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Simulate(a) => simulate(a),
        Cmd::Spectrum(a) => spectrum(a),
        Cmd::Compare {
            config_a,
            config_b,
            approach_a,
            approach_b,
            mode_a,
            mode_b,
            common,
        } => compare((config_a, approach_a, mode_a), (config_b, approach_b, mode_b), common),
        Cmd::Verify { level, inject_fault } => {
            let level = match level {
                VerifyLevel::Fast => Level::Fast,
                VerifyLevel::Full => Level::Full,
            };
            let mut all = true;
            for id in level.criteria() {
                let r = verify::run_criterion(*id, *inject_fault);
                println!("{}", r.line());
                all &= r.passed;
            }
            return if all { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("oscbath: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
