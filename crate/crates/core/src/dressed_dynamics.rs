//! Particle occupation in dressed coordinates.
//!
//! Finite cavity: f_{μν}(t) = Σ_r t_μ^r t_ν^r e^{−iΩ_r t} and
//! n′₀(t) = |f₀₀|²n′₀ + Σ_k |f₀k|² n_k.
//!
//! Continuum: f₀₀ = C1 + iS1 and f₀ω = ω√Δω (C2 + iS2), with C1 and C2 in
//! closed form, S1 and S2 either by direct quadrature or by rotating the
//! contour onto the imaginary axis:
//!
//!   S1(t) = −e^{−πgt/2}[sin κt + (πg/2κ) cos κt] + ∫₀^∞ 2g y² e^{−yt}/Q(y) dy
//!   S2(ω, t) = −(2g)^{3/2}{ −π h(ω) cos(ωt)/(2ω)
//!                         + Im[p e^{ipt}/(2gκ(ω² − p²))]
//!                         − ∫₀^∞ y² e^{−yt}/(Q(y)(ω² + y²)) dy }
//!
//! with Q(y) = (y² + ω̄²)² − π²g²y² (> 0 at weak coupling), h = ω²/D(ω),
//! p = κ + iπg/2.
//!
//! The pole at α = ω in C2/S2 is taken as a principal value, as printed.
//! Summing the finite cavity first and then letting R → ∞ instead adds
//! −√(2g)(ω² − ω̄²)e^{−iωt}/D(ω) to C2 + iS2 (the lattice sum next to the
//! pole equals PV − π cot φ · residue, with cot φ = (ω² − ω̄²)/(πgω)); that
//! limit is available as [`Prescription::ModeSum`].

use std::cell::RefCell;
use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::bare_dynamics::{bose_tail, lorentz_denominator, peak_breaks, thermal_spec, OccupationPoint};
use crate::error::{Error, Result};
use crate::model::{bose_unchecked, kappa, ComplexValue, PhysParams};
use crate::quadrature::{
    integrate, integrate_oscillatory_from, integrate_principal_value, integrate_semi_infinite,
    integrate_with_breaks, QuadratureResult, QuadratureSpec, Truncation,
};
use crate::spectrum::NormalModeBasis;

/// Amplitudes f_{μν}(t) for one μ and all ν.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeMatrixPoint {
    pub t: f64,
    pub f: Vec<ComplexValue>,
}

impl AmplitudeMatrixPoint {
    /// Σ_ν |f_{μν}|².
    pub fn probability(&self) -> f64 {
        self.f.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// How the continuum limit of the bath amplitudes f₀ω is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Prescription {
    /// Cauchy principal value at α = ω, as printed.
    #[default]
    PrincipalValue,
    /// Limit of the finite-cavity mode sums (PV plus the lattice term).
    ModeSum,
}

/// Route used for S1 and S2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SineRoute {
    /// Contour rotated to the imaginary axis: a smooth Laplace integral.
    #[default]
    Contour,
    /// Direct oscillatory (and principal-value) quadrature on the real axis.
    Quadrature,
}

// ---------------------------------------------------------------- finite N

/// f_{μν}(t) for all ν.
pub fn f_row_finite(basis: &NormalModeBasis, mu: usize, t: f64) -> Result<AmplitudeMatrixPoint> {
    basis.check_index(mu)?;
    let n = basis.len();
    let u: Vec<ComplexValue> = (0..n)
        .map(|r| basis.t(mu, r) * ComplexValue::from_polar(1.0, -basis.omega(r) * t))
        .collect();
    let f = (0..n)
        .map(|nu| {
            let mut acc = ComplexValue::new(0.0, 0.0);
            for (r, ur) in u.iter().enumerate() {
                acc += basis.t(nu, r) * ur;
            }
            acc
        })
        .collect();
    Ok(AmplitudeMatrixPoint { t, f })
}

pub fn f_matrix_finite(basis: &NormalModeBasis, mu: usize, nu: usize, t: f64) -> Result<ComplexValue> {
    basis.check_index(mu)?;
    basis.check_index(nu)?;
    let mut acc = ComplexValue::new(0.0, 0.0);
    for r in 0..basis.len() {
        acc += basis.t(mu, r) * basis.t(nu, r) * ComplexValue::from_polar(1.0, -basis.omega(r) * t);
    }
    Ok(acc)
}

/// |f₀₀|²n′₀ + Σ_k |f₀k|² n_k; vacuum term identically zero.
pub fn occupation_dressed_finite(basis: &NormalModeBasis, params: &PhysParams, t: f64) -> Result<OccupationPoint> {
    let row = f_row_finite(basis, 0, t)?;
    let memory = row.f[0].norm_sqr() * params.n0_init;
    let thermal = row
        .f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, z)| z.norm_sqr() * bose_unchecked(basis.config.bath_frequency(k), params.beta))
        .sum();
    Ok(OccupationPoint::new(t, memory, thermal, 0.0, 0.0))
}

// ---------------------------------------------------------------- continuum

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be finite and non-negative, got {t}")))
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("omega must be positive, got {omega}")))
    }
}

/// C1(t) = e^{−πgt/2}[cos κt − (πg/2κ) sin κt].
pub fn c1_closed(params: &PhysParams, t: f64) -> Result<f64> {
    let k = kappa(params)?;
    check_time(t)?;
    let pg = PI * params.g;
    let (s, c) = (k * t).sin_cos();
    Ok((-0.5 * pg * t).exp() * (c - pg / (2.0 * k) * s))
}

/// Quadrature settings for an oscillatory α-integral whose envelope peaks near ω̄.
fn oscillatory_spec(params: &PhysParams, quad: &QuadratureSpec, from: f64) -> QuadratureSpec {
    quad.with_truncation(Truncation::TailBound)
        .with_map_scale(params.omega_bar)
        .with_extrapolate_from(from.max(4.0 * params.omega_bar))
}

/// ∫₀^∞ envelope(α) trig(αt) dα with trig = cos or sin.
fn fourier_half_line<F: Fn(f64) -> f64>(
    envelope: F,
    cosine: bool,
    params: &PhysParams,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let f = |a: f64| {
        let (s, c) = (a * t).sin_cos();
        envelope(a) * if cosine { c } else { s }
    };
    if t == 0.0 {
        let spec = quad.with_truncation(Truncation::TailBound).with_map_scale(params.omega_bar);
        return integrate_semi_infinite(f, &spec.with_period_hint(None));
    }
    let spec = oscillatory_spec(params, quad, 0.0).with_period_hint(Some(2.0 * PI / t));
    let start = spec.extrapolate_from;
    let half = PI / t;
    let head_end = half * (start / half).ceil();
    let mut head_breaks = peak_breaks(params, head_end);
    head_breaks.retain(|&x| x <= head_end);
    if *head_breaks.last().unwrap() != head_end {
        head_breaks.push(head_end);
    }
    let head = integrate_with_breaks(f, &head_breaks, &spec)?;
    let tail = integrate_oscillatory_from(f, head_end, t, &spec)?;
    Ok(QuadratureResult {
        value: head.value + tail.value,
        error_estimate: head.error_estimate + tail.error_estimate,
        subdivisions_used: head.subdivisions_used + tail.subdivisions_used,
        truncation_tail_bound: 0.0,
    })
}

/// C1(t) = 2g ∫₀^∞ α² cos(αt)/D(α) dα.
pub fn c1_quadrature(params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_time(t)?;
    let g = params.g;
    let r = fourier_half_line(|a| 2.0 * g * a * a / lorentz_denominator(a, params), true, params, t, quad)?;
    Ok(r.value)
}

/// S1(t) = −2g ∫₀^∞ α² sin(αt)/D(α) dα.
pub fn s1_quadrature(params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let g = params.g;
    let r = fourier_half_line(|a| -2.0 * g * a * a / lorentz_denominator(a, params), false, params, t, quad)?;
    Ok(r.value)
}

/// Q(y) = (y² + ω̄²)² − π²g²y².
#[inline]
fn q_imag(y: f64, params: &PhysParams) -> f64 {
    let y2 = y * y;
    (y2 + params.omega_bar.powi(2)).powi(2) - (PI * params.g).powi(2) * y2
}

/// ∫₀^∞ φ(y) e^{−yt} dy for a smooth, non-oscillatory φ.
fn laplace<F: Fn(f64) -> f64>(phi: F, params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<f64> {
    let scale = if t > 0.0 { params.omega_bar.min(1.0 / t) } else { params.omega_bar };
    let spec = quad
        .with_truncation(Truncation::TailBound)
        .with_period_hint(None)
        .with_map_scale(scale)
        .with_tolerances(quad.abs_tol * 1e-2, quad.rel_tol * 1e-2);
    Ok(integrate_semi_infinite(|y| phi(y) * (-y * t).exp(), &spec)?.value)
}

/// S1 by contour rotation: the damped pole part plus a Laplace integral.
pub fn s1_contour(params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<f64> {
    let k = kappa(params)?;
    check_time(t)?;
    if params.g == 0.0 {
        return Ok(-(params.omega_bar * t).sin());
    }
    let pg = PI * params.g;
    let (s, c) = (k * t).sin_cos();
    let pole = -(-0.5 * pg * t).exp() * (s + pg / (2.0 * k) * c);
    let g = params.g;
    let j = laplace(|y| 2.0 * g * y * y / q_imag(y, params), params, t, quad)?;
    Ok(pole + j)
}

/// 4g/(ω̄⁴t³), valid for t ≫ 1/ω̄ (t ≥ 10/ω̄ enforced).
pub fn s1_asymptotic(params: &PhysParams, t: f64) -> Result<f64> {
    if !(t >= 10.0 / params.omega_bar) {
        return Err(Error::Domain(format!("asymptotic form needs t >= 10/omega_bar, got {t}")));
    }
    Ok(4.0 * params.g / (params.omega_bar.powi(4) * t.powi(3)))
}

/// f₀₀(t) = C1 + iS1 (C1 closed form, S1 by contour).
pub fn f00_continuum(params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<ComplexValue> {
    Ok(ComplexValue::new(c1_closed(params, t)?, s1_contour(params, t, quad)?))
}

/// e^{−πgt}[cos κt − (πg/2κ) sin κt]² + 16g²/(ω̄⁸t⁶).
pub fn f00_abs2_longtime(params: &PhysParams, t: f64) -> Result<f64> {
    let c1 = c1_closed(params, t)?;
    if !(t > 0.0) {
        return Err(Error::Domain("long-time form needs t > 0".into()));
    }
    Ok(c1 * c1 + 16.0 * params.g.powi(2) / (params.omega_bar.powi(8) * t.powi(6)))
}

/// C2(ω, t), closed form. D(ω) ≥ π²g²ω² keeps it finite through ω = ω̄.
pub fn c2_closed(omega: f64, params: &PhysParams, t: f64) -> Result<f64> {
    let k = kappa(params)?;
    check_omega(omega)?;
    check_time(t)?;
    if params.g == 0.0 {
        return Ok(0.0);
    }
    let pg = PI * params.g;
    let wb2 = params.omega_bar.powi(2);
    let x = omega * omega;
    let d = lorentz_denominator(omega, params);
    let (sk, ck) = (k * t).sin_cos();
    let damped = (-0.5 * pg * t).exp() * ((x - wb2) / d * ck - pg / (2.0 * k) * (x + wb2) / d * sk);
    Ok((2.0 * params.g).sqrt() * (damped + pg * omega / d * (omega * t).sin()))
}

/// PV ∫₀^∞ α² trig(αt)/((ω² − α²)D(α)) dα.
fn pv_bath_integral(omega: f64, cosine: bool, params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<f64> {
    let f = |a: f64| {
        let trig = if cosine { (a * t).cos() } else { (a * t).sin() };
        a * a * trig / ((omega - a) * (omega + a) * lorentz_denominator(a, params))
    };
    let hint = if t > 0.0 { Some(2.0 * PI / t) } else { None };
    let spec = oscillatory_spec(params, quad, 2.0 * omega).with_period_hint(hint);
    Ok(integrate_principal_value(f, omega, &spec)?.value)
}

/// C2(ω, t) = (2g)^{3/2} PV ∫ α² cos(αt)/((ω² − α²)D(α)) dα.
pub fn c2_quadrature(omega: f64, params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_omega(omega)?;
    check_time(t)?;
    if params.g == 0.0 {
        return Ok(0.0);
    }
    Ok((2.0 * params.g).powf(1.5) * pv_bath_integral(omega, true, params, t, quad)?)
}

/// S2(ω, t) = −(2g)^{3/2} PV ∫ α² sin(αt)/((ω² − α²)D(α)) dα.
pub fn s2_quadrature(omega: f64, params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_omega(omega)?;
    check_time(t)?;
    if params.g == 0.0 || t == 0.0 {
        return Ok(0.0);
    }
    Ok(-(2.0 * params.g).powf(1.5) * pv_bath_integral(omega, false, params, t, quad)?)
}

/// S2(ω, t) by contour rotation.
pub fn s2_contour(omega: f64, params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<f64> {
    let k = kappa(params)?;
    check_omega(omega)?;
    check_time(t)?;
    if params.g == 0.0 {
        return Ok(0.0);
    }
    s2_contour_unchecked(omega, params, k, t, quad)
}

fn s2_contour_unchecked(omega: f64, params: &PhysParams, k: f64, t: f64, quad: &QuadratureSpec) -> Result<f64> {
    let g = params.g;
    let pg = PI * g;
    let d = lorentz_denominator(omega, params);
    let a = -PI * omega * (omega * t).cos() / (2.0 * d);
    let p = ComplexValue::new(k, 0.5 * pg);
    let eipt = ComplexValue::from_polar((-0.5 * pg * t).exp(), k * t);
    let b = (p * eipt / (2.0 * g * k * (omega * omega - p * p))).im;
    let c = -laplace(|y| y * y / (q_imag(y, params) * (omega * omega + y * y)), params, t, quad)?;
    Ok(-(2.0 * g).powf(1.5) * (a + b + c))
}

/// 4√2 g^{3/2}/(ω²ω̄⁴t³), valid for t ≥ 10/ω̄.
pub fn s2_asymptotic(omega: f64, params: &PhysParams, t: f64) -> Result<f64> {
    check_omega(omega)?;
    if !(t >= 10.0 / params.omega_bar) {
        return Err(Error::Domain(format!("asymptotic form needs t >= 10/omega_bar, got {t}")));
    }
    Ok(4.0 * 2.0f64.sqrt() * params.g.powf(1.5) / (omega * omega * params.omega_bar.powi(4) * t.powi(3)))
}

/// Continuum amplitudes for one parameter set.
#[derive(Debug, Clone, Copy)]
pub struct ContinuumAmplitudes {
    pub params: PhysParams,
    pub prescription: Prescription,
    pub route: SineRoute,
    pub quad: QuadratureSpec,
    kappa: f64,
}

impl ContinuumAmplitudes {
    pub fn new(params: &PhysParams, prescription: Prescription, route: SineRoute, quad: &QuadratureSpec) -> Result<Self> {
        params.validate()?;
        quad.validate()?;
        Ok(Self {
            params: *params,
            prescription,
            route,
            quad: *quad,
            kappa: kappa(params)?,
        })
    }

    pub fn c1(&self, t: f64) -> Result<f64> {
        c1_closed(&self.params, t)
    }

    pub fn s1(&self, t: f64) -> Result<f64> {
        match self.route {
            SineRoute::Contour => s1_contour(&self.params, t, &self.quad),
            SineRoute::Quadrature => s1_quadrature(&self.params, t, &self.quad),
        }
    }

    /// Lattice term −√(2g)(ω² − ω̄²)e^{−iωt}/D(ω) for the mode-sum limit.
    fn lattice(&self, omega: f64, t: f64) -> ComplexValue {
        match self.prescription {
            Prescription::PrincipalValue => ComplexValue::new(0.0, 0.0),
            Prescription::ModeSum => {
                let p = &self.params;
                let amp = -(2.0 * p.g).sqrt() * (omega * omega - p.omega_bar.powi(2)) / lorentz_denominator(omega, p);
                ComplexValue::from_polar(amp, -omega * t)
            }
        }
    }

    pub fn c2(&self, omega: f64, t: f64) -> Result<f64> {
        Ok(c2_closed(omega, &self.params, t)? + self.lattice(omega, t).re)
    }

    pub fn s2(&self, omega: f64, t: f64) -> Result<f64> {
        let s = match self.route {
            SineRoute::Contour => {
                check_omega(omega)?;
                check_time(t)?;
                if self.params.g == 0.0 {
                    0.0
                } else {
                    s2_contour_unchecked(omega, &self.params, self.kappa, t, &self.quad)?
                }
            }
            SineRoute::Quadrature => s2_quadrature(omega, &self.params, t, &self.quad)?,
        };
        Ok(s + self.lattice(omega, t).im)
    }

    /// C1² + S1².
    pub fn memory_weight(&self, t: f64) -> Result<f64> {
        Ok(self.c1(t)?.powi(2) + self.s1(t)?.powi(2))
    }

    /// ω²(C2² + S2²), the bath-mode weight per unit frequency.
    pub fn bath_weight(&self, omega: f64, t: f64) -> Result<f64> {
        Ok(omega * omega * (self.c2(omega, t)?.powi(2) + self.s2(omega, t)?.powi(2)))
    }

    /// ∫₀^{ω_max} ω²(C2² + S2²) n(ω) dω with its error and tail bound.
    pub fn thermal_integral(&self, t: f64) -> Result<QuadratureResult> {
        let p = &self.params;
        let (spec, upper) = thermal_spec(p, t, &self.quad);
        let err = RefCell::new(None);
        let r = integrate_with_breaks(
            |w| match self.bath_weight(w, t) {
                Ok(v) => v * bose_unchecked(w, p.beta),
                Err(e) => {
                    err.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            },
            &peak_breaks(p, upper),
            &spec,
        );
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        let r = r?;
        // ω²(C2² + S2²) ≤ 64g/ω² beyond 50ω̄
        let tail = 64.0 * p.g / (upper * upper) * bose_tail(upper, p.beta);
        Ok(r.with_tail_bound(tail))
    }
}

/// n′₀(t) = [C1² + S1²]n′₀ + ∫ω²[C2² + S2²]n(ω)dω with the principal-value
/// bath amplitudes; memory = first term, thermal = the integral, vacuum = 0.
pub fn occupation_dressed_continuum(params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<OccupationPoint> {
    occupation_dressed_continuum_with(params, t, quad, Prescription::PrincipalValue)
}

pub fn occupation_dressed_continuum_with(
    params: &PhysParams,
    t: f64,
    quad: &QuadratureSpec,
    prescription: Prescription,
) -> Result<OccupationPoint> {
    let amps = ContinuumAmplitudes::new(params, prescription, SineRoute::Contour, quad)?;
    if t < 0.0 {
        return Ok(OccupationPoint::new(t, params.n0_init, 0.0, 0.0, 0.0));
    }
    if params.g == 0.0 {
        // |f₀₀| = 1 exactly; skip the cos² + sin² rounding
        return Ok(OccupationPoint::new(t, params.n0_init, 0.0, 0.0, 0.0));
    }
    let memory = amps.memory_weight(t)? * params.n0_init;
    let th = amps.thermal_integral(t)?;
    Ok(OccupationPoint::new(t, memory, th.value, 0.0, th.total_error()))
}

/// t → ∞ limit of the mode-sum occupation, ∫ρ(ω)n(ω)dω with ρ = 2gω²/D.
pub fn dressed_mode_sum_plateau(params: &PhysParams, quad: &QuadratureSpec) -> Result<QuadratureResult> {
    kappa(params)?;
    let (spec, upper) = thermal_spec(params, 0.0, quad);
    let r = integrate_with_breaks(
        |w| 2.0 * params.g * w * w / lorentz_denominator(w, params) * bose_unchecked(w, params.beta),
        &peak_breaks(params, upper),
        &spec,
    )?;
    Ok(r.with_tail_bound(4.0 * params.g / (upper * upper) * bose_tail(upper, params.beta)))
}

/// C1² + S1² + ∫₀^∞ ω²(C2² + S2²) dω. The bath weight falls off like 1/ω²
/// at most, so the integral is taken to Λ = 200ω̄ and 400ω̄ and extrapolated
/// linearly in 1/Λ.
pub fn continuum_completeness(
    params: &PhysParams,
    t: f64,
    quad: &QuadratureSpec,
    prescription: Prescription,
) -> Result<f64> {
    let amps = ContinuumAmplitudes::new(params, prescription, SineRoute::Contour, quad)?;
    let lambda = 200.0 * params.omega_bar;
    let hint = if t > 0.0 { Some(2.0 * PI / t) } else { None };
    let err = RefCell::new(None);
    let weight = |w: f64| match amps.bath_weight(w, t) {
        Ok(v) => v,
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let spec = quad.with_truncation(Truncation::FixedUpper(lambda)).with_period_hint(hint);
    let near = integrate_with_breaks(weight, &peak_breaks(params, lambda), &spec);
    let far = integrate_with_breaks(weight, &[lambda, 2.0 * lambda], &spec);
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    let (near, far) = (near?.value, far?.value);
    // I(Λ) ≈ I∞ − c/Λ  ⇒  I∞ ≈ 2I(2Λ) − I(Λ)
    Ok(amps.memory_weight(t)? + near + 2.0 * far)
}

// ---------------------------------------------------------------- dressing

/// α_{μν} = (1/√ω_μ) Σ_r t_μ^r t_ν^r √Ω_r.
#[derive(Debug, Clone, PartialEq)]
pub struct DressingMatrix {
    pub alpha: DMatrix<f64>,
}

impl DressingMatrix {
    /// max |α − I|.
    pub fn identity_defect(&self) -> f64 {
        let n = self.alpha.nrows();
        (&self.alpha - DMatrix::<f64>::identity(n, n)).amax()
    }

    /// max |αα^T − I|: distance from an orthogonal matrix.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.alpha.nrows();
        (&self.alpha * self.alpha.transpose() - DMatrix::<f64>::identity(n, n)).amax()
    }

    /// max |α − α^T|.
    pub fn asymmetry(&self) -> f64 {
        (&self.alpha - self.alpha.transpose()).amax()
    }
}

pub fn dressing_matrix(basis: &NormalModeBasis) -> DressingMatrix {
    let n = basis.len();
    let t = basis.matrix();
    let mut scaled = t.clone();
    for r in 0..n {
        let s = basis.omega(r).sqrt();
        scaled.column_mut(r).scale_mut(s);
    }
    let mut alpha = scaled * t.transpose();
    for mu in 0..n {
        let s = basis.bare_frequency(mu).sqrt().recip();
        alpha.row_mut(mu).scale_mut(s);
    }
    DressingMatrix { alpha }
}

/// Integration scheme for A₀₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A00Scheme {
    /// Map Ω = s·u/(1 − u) of the whole half line.
    Mapped,
    /// Direct panels on [0, 50ω̄] plus the tail under Ω = 50ω̄/v².
    SplitInverse,
}

/// A₀₀ = (1/√ω̄) ∫₀^∞ 2gΩ²√Ω/D(Ω) dΩ.
pub fn a00_integral(params: &PhysParams, quad: &QuadratureSpec) -> Result<f64> {
    a00_integral_with(params, quad, A00Scheme::Mapped)
}

pub fn a00_integral_with(params: &PhysParams, quad: &QuadratureSpec, scheme: A00Scheme) -> Result<f64> {
    kappa(params)?;
    let g = params.g;
    if g == 0.0 {
        return Ok(1.0);
    }
    let f = |w: f64| 2.0 * g * w * w * w.sqrt() / lorentz_denominator(w, params);
    let value = match scheme {
        A00Scheme::Mapped => {
            // Ω = s u²/(1 − u)², regular at u = 1 because of the Ω^{-3/2} tail
            let sc = params.omega_bar;
            let spec = quad.with_truncation(Truncation::FixedUpper(1.0)).with_period_hint(None);
            let to_u = |w: f64| {
                let r = (w / sc).sqrt();
                r / (1.0 + r)
            };
            let mut breaks: Vec<f64> = peak_breaks(params, 100.0 * sc).iter().map(|&w| to_u(w)).collect();
            breaks.push(1.0);
            let h = |u: f64| {
                if u <= 0.0 || u >= 1.0 {
                    return 0.0;
                }
                let v = 1.0 - u;
                f(sc * u * u / (v * v)) * 2.0 * sc * u / (v * v * v)
            };
            integrate_with_breaks(h, &breaks, &spec)?.value
        }
        A00Scheme::SplitInverse => {
            let x = 50.0 * params.omega_bar;
            let spec = quad.with_truncation(Truncation::FixedUpper(x)).with_period_hint(None);
            let head = integrate_with_breaks(f, &peak_breaks(params, x), &spec)?;
            // Ω = x/v², dΩ = 2x/v³ dv
            let tail = integrate(|v: f64| if v == 0.0 { 0.0 } else { f(x / (v * v)) * 2.0 * x / (v * v * v) }, 0.0, 1.0, &spec)?;
            head.value + tail.value
        }
    };
    Ok(value / params.omega_bar.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig() -> PhysParams {
        PhysParams::figure_defaults()
    }

    #[test]
    fn initial_values() {
        let q = QuadratureSpec::default();
        assert_eq!(c1_closed(&fig(), 0.0).unwrap(), 1.0);
        assert!(s1_contour(&fig(), 0.0, &q).unwrap().abs() < 1e-9);
        assert_eq!(s1_quadrature(&fig(), 0.0, &q).unwrap(), 0.0);
        assert!((c1_quadrature(&fig(), 0.0, &q).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn c2_resonance_value() {
        let p = fig();
        let k = kappa(&p).unwrap();
        let pg = PI * p.g;
        let dbar = pg * pg;
        for t in [1.0, 5.0, 20.0] {
            let expect = (2.0 * p.g).sqrt()
                * (-(pg / (2.0 * k)) * (2.0 / dbar) * (-0.5 * pg * t).exp() * (k * t).sin() + pg / dbar * t.sin());
            assert!((c2_closed(1.0, &p, t).unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn decoupled_amplitudes() {
        let p = fig().with_g(0.0);
        let q = QuadratureSpec::default();
        assert_eq!(c2_closed(1.5, &p, 3.0).unwrap(), 0.0);
        assert_eq!(s2_contour(1.5, &p, 3.0, &q).unwrap(), 0.0);
        assert!((s1_contour(&p, 2.0, &q).unwrap() + 2.0f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_domain() {
        assert!(s1_asymptotic(&fig(), 5.0).is_err());
        let a = s1_asymptotic(&fig(), 20.0).unwrap();
        let b = s1_asymptotic(&fig(), 40.0).unwrap();
        assert!((a / b - 8.0).abs() < 1e-12);
        assert_eq!(s1_asymptotic(&fig().with_g(0.0), 20.0).unwrap(), 0.0);
    }
}
