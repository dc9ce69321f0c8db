//! wasm-bindgen front end. Three operations for the static page in `www/`:
//! an occupation curve, the long-time plateaus, and a cavity spectrum.
//! Each returns a flat `Float64Array`; errors come back as JS exceptions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use wasm_bindgen::prelude::*;

use oscbath::bare_dynamics::{bare_plateau, occupation_bare_renormalized};
use oscbath::dressed_dynamics::{dressed_mode_sum_plateau, occupation_dressed_continuum_with, Prescription};
use oscbath::model::{bose_occupation, CavityConfig, PhysParams};
use oscbath::quadrature::QuadratureSpec;
use oscbath::spectrum::{solve_spectrum, SpectrumMethod};

/// Hard limits keep a click from freezing the tab.
pub const MAX_STEPS: usize = 400;
pub const MAX_MODES: usize = 2000;

fn params(g: f64, beta: f64, n0: f64) -> Result<PhysParams, String> {
    PhysParams::new(1.0, g, beta, n0).map_err(|e| e.to_string())
}

/// Rows of (t, total, memory, thermal) flattened, for t on a uniform grid
/// over [t_end/steps, t_end]. `approach` is "bare", "dressed" or
/// "dressed-mode-sum".
pub fn occupation_rows(approach: &str, g: f64, beta: f64, n0: f64, t_end: f64, steps: usize) -> Result<Vec<f64>, String> {
    let p = params(g, beta, n0)?;
    if !(t_end > 0.0) || steps == 0 || steps > MAX_STEPS {
        return Err(format!("need t_end > 0 and 1..={MAX_STEPS} steps"));
    }
    let q = QuadratureSpec::default();
    let mut out = Vec::with_capacity(4 * steps);
    for i in 1..=steps {
        let t = t_end * i as f64 / steps as f64;
        let o = match approach {
            "bare" => occupation_bare_renormalized(&p, t, &q),
            "dressed" => occupation_dressed_continuum_with(&p, t, &q, Prescription::PrincipalValue),
            "dressed-mode-sum" => occupation_dressed_continuum_with(&p, t, &q, Prescription::ModeSum),
            other => return Err(format!("unknown approach {other}")),
        }
        .map_err(|e| format!("t = {t}: {e}"))?;
        out.extend([t, o.total, o.memory, o.thermal]);
    }
    Ok(out)
}

/// [Bose n(ω̄), bare plateau, dressed plateau with mode-sum amplitudes].
pub fn plateau_values(g: f64, beta: f64) -> Result<Vec<f64>, String> {
    let p = params(g, beta, 1.0)?;
    let q = QuadratureSpec::default();
    let e = |e: oscbath::Error| e.to_string();
    Ok(vec![
        bose_occupation(1.0, beta).map_err(e)?,
        bare_plateau(&p, &q).map_err(e)?.value,
        dressed_mode_sum_plateau(&p, &q).map_err(e)?.value,
    ])
}

/// Pairs (Ω_r, (t₀^r)²) for a cavity of radius `radius` (c = 1) with
/// `modes` bath modes.
pub fn spectrum_pairs(g: f64, radius: f64, modes: usize) -> Result<Vec<f64>, String> {
    if modes > MAX_MODES {
        return Err(format!("at most {MAX_MODES} modes"));
    }
    let p = params(g, 2.0, 1.0)?;
    let cfg = CavityConfig::new(radius, 1.0, modes).map_err(|e| e.to_string())?;
    let b = solve_spectrum(&cfg, &p, SpectrumMethod::FiniteSecular).map_err(|e| e.to_string())?;
    Ok((0..b.len()).flat_map(|r| [b.omega(r), b.t(0, r).powi(2)]).collect())
}

#[wasm_bindgen]
pub fn occupation(approach: &str, g: f64, beta: f64, n0: f64, t_end: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    occupation_rows(approach, g, beta, n0, t_end, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn plateaus(g: f64, beta: f64) -> Result<Vec<f64>, JsError> {
    plateau_values(g, beta).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn spectrum(g: f64, radius: f64, modes: usize) -> Result<Vec<f64>, JsError> {
    spectrum_pairs(g, radius, modes).map_err(|e| JsError::new(&e))
}
