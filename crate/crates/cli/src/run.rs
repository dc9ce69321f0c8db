//! Executing a `RunConfig`: occupation over the time grid, spectra, and
//! pairwise comparison of two runs.

use std::fmt;

use rayon::prelude::*;

use oscbath::bare_dynamics::{occupation_bare_finite, occupation_bare_renormalized, OccupationSeries};
use oscbath::dressed_dynamics::{occupation_dressed_continuum_with, occupation_dressed_finite};
use oscbath::error::Error;
use oscbath::model::PhysParams;
use oscbath::spectrum::{renormalized_frequency, solve_spectrum, NormalModeBasis, SpectrumMethod};

use crate::config::{Approach, ConfigError, Mode, RunConfig};

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    /// A continuum integral missed its tolerance at time `t`.
    Quadrature { t: f64, source: Error },
    Stability(Error),
    Model(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Model(_) => 2,
            RunError::Quadrature { .. } => 3,
            RunError::Stability(_) => 4,
        }
    }

    fn at(t: f64, e: Error) -> Self {
        match e {
            Error::Quadrature { .. } | Error::NonFinite(_) => RunError::Quadrature { t, source: e },
            Error::Stability { .. } => RunError::Stability(e),
            _ => RunError::Model(e),
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "{e}"),
            RunError::Quadrature { t, source } => write!(f, "at t = {t}: {source}"),
            RunError::Stability(e) => write!(f, "{e}"),
            RunError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

/// Parameters with ω̄ resolved from ω₀ when the config gives a bare frequency.
pub fn effective_params(cfg: &RunConfig) -> Result<PhysParams, RunError> {
    let mut p = cfg.params;
    if let (Some(w0), Some(cav)) = (cfg.omega0, &cfg.cavity) {
        p.omega_bar = renormalized_frequency(w0, p.g, cav).map_err(|e| RunError::at(0.0, e))?;
    }
    p.validate().map_err(RunError::Model)?;
    Ok(p)
}

pub fn spectrum(cfg: &RunConfig) -> Result<NormalModeBasis, RunError> {
    let Some(cav) = &cfg.cavity else {
        return Err(ConfigError("spectrum needs cavity mode".into()).into());
    };
    let p = effective_params(cfg)?;
    solve_spectrum(cav, &p, SpectrumMethod::FiniteSecular).map_err(|e| RunError::at(0.0, e))
}

pub fn simulate(cfg: &RunConfig) -> Result<OccupationSeries, RunError> {
    let p = effective_params(cfg)?;
    let basis = match cfg.mode {
        Mode::Cavity => Some(spectrum(cfg)?),
        Mode::Continuum => None,
    };
    let times = cfg.times();
    // grid points are independent; collect keeps grid order
    let points: Vec<_> = times
        .par_iter()
        .map(|&t| {
            let r = match (cfg.approach, &basis) {
                (Approach::Bare, Some(b)) => occupation_bare_finite(b, &p, t),
                (Approach::Dressed, Some(b)) => occupation_dressed_finite(b, &p, t),
                (Approach::Bare, None) => occupation_bare_renormalized(&p, t, &cfg.quad),
                (Approach::Dressed, None) => occupation_dressed_continuum_with(&p, t, &cfg.quad, cfg.prescription),
            };
            r.map_err(|e| RunError::at(t, e))
        })
        .collect();
    points.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub times: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl Comparison {
    pub fn diffs(&self) -> impl Iterator<Item = f64> + '_ {
        self.a.iter().zip(&self.b).map(|(a, b)| (a - b).abs())
    }

    pub fn max(&self) -> f64 {
        self.diffs().fold(0.0, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.diffs().sum::<f64>() / self.times.len() as f64
    }
}

pub fn compare(a: &RunConfig, b: &RunConfig) -> Result<Comparison, RunError> {
    let (ta, tb) = (a.times(), b.times());
    if ta != tb {
        return Err(ConfigError("time grids differ; compare needs identical t_start, t_end, steps and grid type".into()).into());
    }
    let sa = simulate(a)?;
    let sb = simulate(b)?;
    Ok(Comparison {
        times: ta,
        a: sa.total,
        b: sb.total,
    })
}
