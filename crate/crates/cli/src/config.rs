//! Run configuration: flat `key = value` files with `#` comments, overridden
//! by command-line flags. `RunConfig::to_config_string` emits the effective
//! configuration in the same format, and parsing it back yields the same run.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use oscbath::dressed_dynamics::Prescription;
use oscbath::model::{CavityConfig, PhysParams};
use oscbath::quadrature::QuadratureSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approach {
    Bare,
    Dressed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Cavity,
    Continuum,
}

/// Recognised keys, in emission order.
pub const KEYS: &[&str] = &[
    "approach",
    "mode",
    "omega_bar",
    "omega0",
    "g",
    "beta",
    "n0",
    "R",
    "c",
    "N",
    "t_start",
    "t_end",
    "steps",
    "log_grid",
    "abs_tol",
    "rel_tol",
    "prescription",
    "output",
];

/// Raw key/value settings before validation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(pub BTreeMap<String, String>);

impl Settings {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return err(format!("line {}: expected `key = value`", i + 1));
            };
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return err(format!("line {}: unknown key `{k}`", i + 1));
            }
            map.insert(k.to_string(), v.to_string());
        }
        Ok(Self(map))
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        debug_assert!(KEYS.contains(&key));
        self.0.insert(key.to_string(), value.to_string());
    }

    /// Later settings win.
    pub fn merge(&mut self, other: &Settings) {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn float(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().or_else(|_| err(format!("`{key}`: not a number: {v}"))),
        }
    }

    fn opt_float(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        self.get(key).map(|_| self.float(key, 0.0)).transpose()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub approach: Approach,
    pub mode: Mode,
    pub params: PhysParams,
    /// Bare frequency ω₀ the renormalized ω̄ was derived from, if given.
    pub omega0: Option<f64>,
    pub cavity: Option<CavityConfig>,
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
    pub log_grid: bool,
    pub quad: QuadratureSpec,
    pub prescription: Prescription,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_settings(s: &Settings) -> Result<Self, ConfigError> {
        let approach = match s.get("approach").unwrap_or("bare") {
            "bare" => Approach::Bare,
            "dressed" => Approach::Dressed,
            v => return err(format!("`approach` must be bare or dressed, got {v}")),
        };
        let mode = match s.get("mode").unwrap_or("continuum") {
            "cavity" => Mode::Cavity,
            "continuum" => Mode::Continuum,
            v => return err(format!("`mode` must be cavity or continuum, got {v}")),
        };
        let prescription = match s.get("prescription").unwrap_or("pv") {
            "pv" => Prescription::PrincipalValue,
            "mode-sum" => Prescription::ModeSum,
            v => return err(format!("`prescription` must be pv or mode-sum, got {v}")),
        };
        let g = s.float("g", 0.1)?;
        let beta = s.float("beta", 2.0)?;
        let n0 = s.float("n0", 1.0)?;
        let omega0 = s.opt_float("omega0")?;

        let cavity = match mode {
            Mode::Continuum => None,
            Mode::Cavity => {
                let (Some(r), Some(n)) = (s.opt_float("R")?, s.get("N")) else {
                    return err("cavity mode needs both `R` and `N`");
                };
                let n: usize = n.parse().or_else(|_| err(format!("`N`: not a positive integer: {n}")))?;
                let c = s.float("c", 1.0)?;
                Some(CavityConfig::new(r, c, n).map_err(|e| ConfigError(e.to_string()))?)
            }
        };
        if omega0.is_some() && s.get("omega_bar").is_some() {
            return err("give either `omega_bar` or `omega0`, not both");
        }
        if omega0.is_some() && cavity.is_none() {
            return err("`omega0` needs cavity mode (the counterterm depends on N)");
        }
        // with omega0 the renormalized frequency is resolved at run time
        let omega_bar = s.float("omega_bar", 1.0)?;
        let params = PhysParams {
            omega_bar,
            g,
            beta,
            n0_init: n0,
        };
        if omega0.is_none() {
            params.validate().map_err(|e| ConfigError(e.to_string()))?;
        }

        let t_start = s.float("t_start", 1.0)?;
        let t_end = s.float("t_end", 50.0)?;
        let steps: usize = match s.get("steps") {
            None => 50,
            Some(v) => v.parse().or_else(|_| err(format!("`steps`: not an integer: {v}")))?,
        };
        let log_grid = match s.get("log_grid").unwrap_or("false") {
            "true" => true,
            "false" => false,
            v => return err(format!("`log_grid` must be true or false, got {v}")),
        };
        if !(t_start.is_finite() && t_end.is_finite() && t_start < t_end) {
            return err(format!("need t_start < t_end, got {t_start} and {t_end}"));
        }
        if steps < 2 {
            return err("`steps` must be at least 2");
        }
        if log_grid && !(t_start > 0.0) {
            return err("a log grid needs t_start > 0");
        }
        let def = QuadratureSpec::default();
        let quad = def.with_tolerances(s.float("abs_tol", def.abs_tol)?, s.float("rel_tol", def.rel_tol)?);
        quad.validate().map_err(|e| ConfigError(e.to_string()))?;

        Ok(Self {
            approach,
            mode,
            params,
            omega0,
            cavity,
            t_start,
            t_end,
            steps,
            log_grid,
            quad,
            prescription,
            output: s.get("output").map(PathBuf::from),
        })
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Self::from_settings(&Settings::parse(text)?)
    }

    pub fn times(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    return self.t_end;
                }
                let x = i as f64 / n as f64;
                if self.log_grid {
                    self.t_start * (self.t_end / self.t_start).powf(x)
                } else {
                    self.t_start + (self.t_end - self.t_start) * x
                }
            })
            .collect()
    }

    /// The effective configuration, one `key = value` per line.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        line("approach", match self.approach {
            Approach::Bare => "bare",
            Approach::Dressed => "dressed",
        }
        .into());
        line("mode", match self.mode {
            Mode::Cavity => "cavity",
            Mode::Continuum => "continuum",
        }
        .into());
        match self.omega0 {
            Some(w0) => line("omega0", w0.to_string()),
            None => line("omega_bar", self.params.omega_bar.to_string()),
        }
        line("g", self.params.g.to_string());
        line("beta", self.params.beta.to_string());
        line("n0", self.params.n0_init.to_string());
        if let Some(c) = &self.cavity {
            line("R", c.radius.to_string());
            line("c", c.speed.to_string());
            line("N", c.modes.to_string());
        }
        line("t_start", self.t_start.to_string());
        line("t_end", self.t_end.to_string());
        line("steps", self.steps.to_string());
        line("log_grid", self.log_grid.to_string());
        line("abs_tol", self.quad.abs_tol.to_string());
        line("rel_tol", self.quad.rel_tol.to_string());
        line("prescription", match self.prescription {
            Prescription::PrincipalValue => "pv",
            Prescription::ModeSum => "mode-sum",
        }
        .into());
        if let Some(p) = &self.output {
            line("output", p.display().to_string());
        }
        out
    }
}
