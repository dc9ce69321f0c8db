//! Particle occupation in bare coordinates.
//!
//! Finite cavity: the Bogoliubov coefficients are mode sums over the normal
//! modes and n₀(t) is assembled term by term. Continuum: the closed forms for
//! α₀₀, β₀₀, the memory coefficient K and the kernels F, G, with the
//! divergent vacuum integral over G subtracted (renormalized occupation).
//!
//! Phase conventions: the printed β₀₀ and α₀k closed forms differ from the
//! mode sums by an overall sign. They are kept as printed; only |·|² enters
//! any occupation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{bose_unchecked, kappa, ComplexValue, PhysParams};
use crate::quadrature::{integrate_with_breaks, QuadratureResult, QuadratureSpec, Truncation};
use crate::spectrum::NormalModeBasis;

/// Bogoliubov pair (α_{μν}(t), β_{μν}(t)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovPair {
    pub alpha: ComplexValue,
    pub beta: ComplexValue,
}

/// Occupation at one time with its breakdown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupationPoint {
    pub t: f64,
    pub total: f64,
    /// Contribution carried by the initial occupation.
    pub memory: f64,
    /// Bose-weighted bath contribution.
    pub thermal: f64,
    /// Temperature-independent contribution.
    pub vacuum: f64,
    /// Quadrature error estimate plus truncation tail (0 for finite sums).
    pub error_estimate: f64,
}

impl OccupationPoint {
    pub(crate) fn new(t: f64, memory: f64, thermal: f64, vacuum: f64, error_estimate: f64) -> Self {
        Self {
            t,
            total: memory + thermal + vacuum,
            memory,
            thermal,
            vacuum,
            error_estimate,
        }
    }
}

/// Occupation over a time grid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OccupationSeries {
    pub times: Vec<f64>,
    pub total: Vec<f64>,
    pub memory_term: Vec<f64>,
    pub thermal_term: Vec<f64>,
    pub vacuum_term: Vec<f64>,
}

impl OccupationSeries {
    pub fn push(&mut self, p: OccupationPoint) {
        self.times.push(p.t);
        self.total.push(p.total);
        self.memory_term.push(p.memory);
        self.thermal_term.push(p.thermal);
        self.vacuum_term.push(p.vacuum);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn point(&self, i: usize) -> OccupationPoint {
        OccupationPoint {
            t: self.times[i],
            total: self.total[i],
            memory: self.memory_term[i],
            thermal: self.thermal_term[i],
            vacuum: self.vacuum_term[i],
            error_estimate: 0.0,
        }
    }
}

impl FromIterator<OccupationPoint> for OccupationSeries {
    fn from_iter<I: IntoIterator<Item = OccupationPoint>>(iter: I) -> Self {
        let mut s = Self::default();
        for p in iter {
            s.push(p);
        }
        s
    }
}

/// Upper frequency for Bose-weighted integrals: max(50ω̄, 40/β).
pub fn thermal_cutoff(params: &PhysParams) -> f64 {
    (50.0 * params.omega_bar).max(40.0 / params.beta)
}

/// ∫_a^∞ dω/(e^{βω} − 1) = −ln(1 − e^{−βa})/β.
pub(crate) fn bose_tail(a: f64, beta: f64) -> f64 {
    -(-(beta * a)).exp().ln_1p() / beta
}

// ---------------------------------------------------------------- finite N

/// α_{μν}(t), β_{μν}(t) for all ν at once.
pub fn bogoliubov_row(basis: &NormalModeBasis, mu: usize, t: f64) -> Result<Vec<BogoliubovPair>> {
    basis.check_index(mu)?;
    let n = basis.len();
    let w_mu = basis.bare_frequency(mu);
    let mut u = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for r in 0..n {
        let om = basis.omega(r);
        let e = ComplexValue::from_polar(1.0, om * t);
        let ec = e.conj();
        let a = (w_mu - om) * e + (w_mu + om) * ec;
        let b = (om - w_mu) * e + (om + w_mu) * ec;
        let tm = basis.t(mu, r);
        u.push(tm * a);
        v.push(tm * b / om);
    }
    let scale = 0.25 / w_mu.sqrt();
    let mut row = Vec::with_capacity(n);
    for nu in 0..n {
        let mut p = ComplexValue::new(0.0, 0.0);
        let mut q = ComplexValue::new(0.0, 0.0);
        for r in 0..n {
            let tn = basis.t(nu, r);
            p += tn * u[r];
            q += tn * v[r];
        }
        let sw = basis.bare_frequency(nu).sqrt();
        row.push(BogoliubovPair {
            alpha: scale * (p / sw + sw * q),
            beta: scale * (p / sw - sw * q),
        });
    }
    Ok(row)
}

pub fn bogoliubov_finite(basis: &NormalModeBasis, mu: usize, nu: usize, t: f64) -> Result<BogoliubovPair> {
    basis.check_index(nu)?;
    Ok(bogoliubov_row(basis, mu, t)?[nu])
}

/// |Σ_ν (|α_{μν}|² − |β_{μν}|²) − 1|.
pub fn bogoliubov_unitarity_defect(basis: &NormalModeBasis, mu: usize, t: f64) -> Result<f64> {
    let row = bogoliubov_row(basis, mu, t)?;
    let s: f64 = row.iter().map(|p| p.alpha.norm_sqr() - p.beta.norm_sqr()).sum();
    Ok((s - 1.0).abs())
}

/// n₀(t) from the finite mode sums: memory = (|α₀₀|² + |β₀₀|²)n₀,
/// thermal = Σ_k (|α₀k|² + |β₀k|²)n_k, vacuum = |β₀₀|² + Σ_k |β₀k|².
pub fn occupation_bare_finite(basis: &NormalModeBasis, params: &PhysParams, t: f64) -> Result<OccupationPoint> {
    let row = bogoliubov_row(basis, 0, t)?;
    let memory = (row[0].alpha.norm_sqr() + row[0].beta.norm_sqr()) * params.n0_init;
    let mut thermal = 0.0;
    let mut vacuum = row[0].beta.norm_sqr();
    for (k, p) in row.iter().enumerate().skip(1) {
        let nk = bose_unchecked(basis.config.bath_frequency(k), params.beta);
        thermal += (p.alpha.norm_sqr() + p.beta.norm_sqr()) * nk;
        vacuum += p.beta.norm_sqr();
    }
    Ok(OccupationPoint::new(t, memory, thermal, vacuum, 0.0))
}

// ---------------------------------------------------------------- continuum

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be finite and non-negative, got {t}")))
    }
}

/// α₀₀(t) = e^{−πgt/2}/(16ω̄κ)[(2ω̄ + 2κ − iπg)²e^{−iκt} − (2ω̄ − 2κ − iπg)²e^{iκt}].
pub fn alpha00_continuum(params: &PhysParams, t: f64) -> Result<ComplexValue> {
    let k = kappa(params)?;
    check_time(t)?;
    let wb = params.omega_bar;
    let ipg = ComplexValue::new(0.0, PI * params.g);
    let a = 2.0 * wb + 2.0 * k - ipg;
    let b = 2.0 * wb - 2.0 * k - ipg;
    let em = ComplexValue::from_polar(1.0, -k * t);
    let env = (-0.5 * PI * params.g * t).exp() / (16.0 * wb * k);
    Ok(env * (a * a * em - b * b * em.conj()))
}

/// β₀₀(t) = πg e^{−πgt/2}/(8ω̄κ)[(πg + 2iκ)e^{−iκt} − (πg − 2iκ)e^{iκt}].
pub fn beta00_continuum(params: &PhysParams, t: f64) -> Result<ComplexValue> {
    let k = kappa(params)?;
    check_time(t)?;
    let pg = PI * params.g;
    let em = ComplexValue::from_polar(1.0, -k * t);
    let env = pg * (-0.5 * pg * t).exp() / (8.0 * params.omega_bar * k);
    let a = ComplexValue::new(pg, 2.0 * k);
    let b = ComplexValue::new(pg, -2.0 * k);
    Ok(env * (a * em - b * em.conj()))
}

/// Continuum α₀k(t) for the bath mode at `omega` with spacing `delta_omega`
/// (printed form; equals minus the mode sum).
pub fn alpha0k_continuum(params: &PhysParams, omega: f64, delta_omega: f64, t: f64) -> Result<ComplexValue> {
    let k = kappa(params)?;
    check_time(t)?;
    let wb = params.omega_bar;
    let pg = PI * params.g;
    let i = ComplexValue::i();
    let first = (omega / (2.0 * wb)).sqrt() * (wb + omega) * (params.g * delta_omega).sqrt()
        * ComplexValue::from_polar(1.0, -omega * t)
        / (omega * omega - wb * wb + i * pg * omega);
    let pref = (omega / wb).sqrt() * (2.0 * params.g * delta_omega).sqrt() / (4.0 * k);
    let em = ComplexValue::from_polar(1.0, -k * t);
    let bracket = (2.0 * k + 2.0 * wb - i * pg) / (2.0 * k - 2.0 * omega - i * pg) * em
        + (2.0 * wb - 2.0 * k - i * pg) / (2.0 * k + 2.0 * omega + i * pg) * em.conj();
    Ok(first + pref * bracket * (-0.5 * pg * t).exp())
}

/// Continuum β₀k(t), printed form.
pub fn beta0k_continuum(params: &PhysParams, omega: f64, delta_omega: f64, t: f64) -> Result<ComplexValue> {
    let k = kappa(params)?;
    check_time(t)?;
    let wb = params.omega_bar;
    let pg = PI * params.g;
    let i = ComplexValue::i();
    let first = (omega / (2.0 * wb)).sqrt() * (omega - wb) * (params.g * delta_omega).sqrt()
        * ComplexValue::from_polar(1.0, omega * t)
        / (omega * omega - wb * wb - i * pg * omega);
    let pref = (omega / wb).sqrt() * (2.0 * params.g * delta_omega).sqrt() / (4.0 * k);
    let em = ComplexValue::from_polar(1.0, -k * t);
    let bracket = (2.0 * wb + 2.0 * k - i * pg) / (2.0 * k + 2.0 * omega - i * pg) * em
        + (2.0 * wb - 2.0 * k - i * pg) / (2.0 * k - 2.0 * omega + i * pg) * em.conj();
    Ok(first - pref * bracket * (-0.5 * pg * t).exp())
}

/// D(ω) = (ω² − ω̄²)² + π²g²ω².
#[inline]
pub(crate) fn lorentz_denominator(omega: f64, params: &PhysParams) -> f64 {
    let x = omega * omega;
    let wb2 = params.omega_bar * params.omega_bar;
    (x - wb2).powi(2) + (PI * params.g).powi(2) * x
}

/// Thermal kernel F(ω, ω̄, g, t).
pub fn kernel_f(omega: f64, params: &PhysParams, t: f64) -> Result<f64> {
    let k = kappa(params)?;
    Ok(kernel_f_unchecked(omega, params, k, t))
}

fn kernel_f_unchecked(omega: f64, params: &PhysParams, k: f64, t: f64) -> f64 {
    let wb2 = params.omega_bar * params.omega_bar;
    let pg = PI * params.g;
    let x = omega * omega;
    let sum = x + wb2;
    let ratio = (x - wb2) / sum;
    let (s2, c2) = (2.0 * k * t).sin_cos();
    let (sk, ck) = (k * t).sin_cos();
    let (sw, cw) = (omega * t).sin_cos();
    let damp = (-pg * t).exp();
    let half = (-0.5 * pg * t).exp();
    let brace = 1.0 + damp / (4.0 * k * k) * (4.0 * wb2 - pg * pg * c2 - 2.0 * pg * k * ratio * s2)
        - half / k * (2.0 * k * cw * ck + 4.0 * omega * wb2 / sum * sw * sk - pg * ratio * cw * sk);
    omega * sum / lorentz_denominator(omega, params) * brace
}

/// F(ω, t → ∞) = ω(ω² + ω̄²)/D(ω).
pub fn kernel_f_longtime(omega: f64, params: &PhysParams) -> f64 {
    omega * (omega * omega + params.omega_bar * params.omega_bar) / lorentz_denominator(omega, params)
}

/// Vacuum kernel G(ω, ω̄, g, t), evaluated with the (ω − ω̄)² prefactor
/// multiplied through so that no negative power of (ω − ω̄) remains.
pub fn kernel_g(omega: f64, params: &PhysParams, t: f64) -> Result<f64> {
    let k = kappa(params)?;
    Ok(kernel_g_unchecked(omega, params, k, t))
}

fn kernel_g_unchecked(omega: f64, params: &PhysParams, k: f64, t: f64) -> f64 {
    let wb = params.omega_bar;
    let wb2 = wb * wb;
    let pg = PI * params.g;
    let dm = omega - wb;
    let dp = omega + wb;
    let (s2, c2) = (2.0 * k * t).sin_cos();
    let (sk, ck) = (k * t).sin_cos();
    let (sw, cw) = (omega * t).sin_cos();
    let damp = (-pg * t).exp();
    let half = (-0.5 * pg * t).exp();
    let grouped = dm * dm * (1.0 + damp * wb2 / (k * k) - half / k * (2.0 * k * cw * ck - 2.0 * wb * sw * sk))
        + damp / (4.0 * k * k)
            * (2.0 * pg * pg * wb * omega - pg * pg * (omega * omega + wb2) * c2 - 2.0 * pg * k * dp * dm * s2)
        + half / k * pg * dp * dm * cw * sk;
    omega * grouped / lorentz_denominator(omega, params)
}

/// Coefficient of the 1/ω tail of G: 1 + e^{−πgt}[ω̄²/κ² − π²g²cos(2κt)/(4κ²) − πg sin(2κt)/(2κ)].
pub fn kernel_g_tail_coefficient(params: &PhysParams, t: f64) -> Result<f64> {
    let k = kappa(params)?;
    let pg = PI * params.g;
    let wb2 = params.omega_bar.powi(2);
    let (s2, c2) = (2.0 * k * t).sin_cos();
    Ok(1.0 + (-pg * t).exp() * (wb2 / (k * k) - pg * pg * c2 / (4.0 * k * k) - pg * s2 / (2.0 * k)))
}

/// Memory coefficient K(ω̄, g, t); for t < 0 the pre-interaction value n₀.
pub fn memory_coefficient_k(params: &PhysParams, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Ok(params.n0_init);
    }
    let k = kappa(params)?;
    let wb2 = params.omega_bar.powi(2);
    let pg = PI * params.g;
    let (s2, c2) = (2.0 * k * t).sin_cos();
    let damp = (-pg * t).exp();
    let n0_part = damp / (wb2 * k * k)
        * (wb2 * wb2 + pg * pg / 8.0 * (2.0 * wb2 - pg * pg) * c2 - pg.powi(3) * k / 4.0 * s2)
        * params.n0_init;
    let free_part = pg * pg * damp / (16.0 * wb2 * k * k) * (2.0 * wb2 + (2.0 * wb2 - pg * pg) * c2 - 2.0 * pg * k * s2);
    Ok(n0_part + free_part)
}

/// Quadrature settings for a Bose-weighted ω-integral at time t: fixed upper
/// cutoff (spec's own bound if it has one) and half-period panels in ω.
pub(crate) fn thermal_spec(params: &PhysParams, t: f64, quad: &QuadratureSpec) -> (QuadratureSpec, f64) {
    let upper = match quad.truncation {
        Truncation::FixedUpper(u) => u,
        Truncation::TailBound => thermal_cutoff(params),
    };
    let hint = if t > 0.0 { Some(2.0 * PI / t) } else { None };
    (
        quad.with_truncation(Truncation::FixedUpper(upper)).with_period_hint(hint),
        upper,
    )
}

/// Breakpoints around the Lorentzian peak at ω̄ for the range (0, upper).
pub(crate) fn peak_breaks(params: &PhysParams, upper: f64) -> Vec<f64> {
    let wb = params.omega_bar;
    let w = (PI * params.g).max(1e-3 * wb);
    let mut pts = vec![0.0];
    for p in [wb - 4.0 * w, wb - w, wb, wb + w, wb + 4.0 * w, 4.0 * wb] {
        if p > *pts.last().unwrap() && p < upper {
            pts.push(p);
        }
    }
    pts.push(upper);
    pts
}

/// (g/ω̄)∫₀^{ω_max} F(ω, t) n(ω) dω with its error and tail bound.
pub fn thermal_integral_bare(params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<QuadratureResult> {
    let k = kappa(params)?;
    let (spec, upper) = thermal_spec(params, t, quad);
    let beta = params.beta;
    let r = integrate_with_breaks(
        |w| kernel_f_unchecked(w, params, k, t) * bose_unchecked(w, beta),
        &peak_breaks(params, upper),
        &spec,
    )?;
    // |F| ≤ M·ω(ω² + ω̄²)/D ≤ M·2/ω beyond 50ω̄
    let pg = PI * params.g;
    let wb2 = params.omega_bar.powi(2);
    let m = 1.0
        + (-pg * t).exp() * (4.0 * wb2 + pg * pg + 2.0 * pg * k) / (4.0 * k * k)
        + (-0.5 * pg * t).exp() * (2.0 * k + 2.0 * params.omega_bar + pg) / k;
    let tail = m * 2.0 / upper * bose_tail(upper, beta);
    let scale = params.g / params.omega_bar;
    Ok(QuadratureResult {
        value: scale * r.value,
        error_estimate: scale * r.error_estimate,
        subdivisions_used: r.subdivisions_used,
        truncation_tail_bound: scale * tail,
    })
}

/// Renormalized occupation n̄₀(t) = K(ω̄, g, t) + (g/ω̄)∫ F n dω.
/// memory = K (the n₀-free part of K included), thermal = the integral,
/// vacuum = 0 (subtracted). For t < 0 returns n₀.
pub fn occupation_bare_renormalized(params: &PhysParams, t: f64, quad: &QuadratureSpec) -> Result<OccupationPoint> {
    params.validate()?;
    kappa(params)?;
    if t < 0.0 {
        return Ok(OccupationPoint::new(t, params.n0_init, 0.0, 0.0, 0.0));
    }
    let memory = memory_coefficient_k(params, t)?;
    if params.g == 0.0 {
        return Ok(OccupationPoint::new(t, memory, 0.0, 0.0, 0.0));
    }
    let th = thermal_integral_bare(params, t, quad)?;
    Ok(OccupationPoint::new(t, memory, th.value, 0.0, th.total_error()))
}

/// t → ∞ limit: (g/ω̄)∫ ω(ω² + ω̄²)/D · n dω.
pub fn bare_plateau(params: &PhysParams, quad: &QuadratureSpec) -> Result<QuadratureResult> {
    kappa(params)?;
    let (spec, upper) = thermal_spec(params, 0.0, quad);
    let r = integrate_with_breaks(
        |w| kernel_f_longtime(w, params) * bose_unchecked(w, params.beta),
        &peak_breaks(params, upper),
        &spec,
    )?;
    let scale = params.g / params.omega_bar;
    Ok(QuadratureResult {
        value: scale * r.value,
        error_estimate: scale * r.error_estimate,
        subdivisions_used: r.subdivisions_used,
        truncation_tail_bound: scale * 2.0 / upper * bose_tail(upper, params.beta),
    })
}

/// (g/ω̄)∫₀^Λ G(ω, t) dω for each cutoff Λ.
pub fn vacuum_divergence_probe(
    params: &PhysParams,
    t: f64,
    cutoffs: &[f64],
    quad: &QuadratureSpec,
) -> Result<Vec<f64>> {
    let k = kappa(params)?;
    if cutoffs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("cutoffs must be increasing".into()));
    }
    if let Some(&c) = cutoffs.first() {
        if c < 10.0 * params.omega_bar {
            return Err(Error::InvalidParameter("cutoffs must be at least 10 omega_bar".into()));
        }
    }
    if params.g == 0.0 {
        return Ok(vec![0.0; cutoffs.len()]);
    }
    let hint = if t > 0.0 { Some(2.0 * PI / t) } else { None };
    let scale = params.g / params.omega_bar;
    let mut out = Vec::with_capacity(cutoffs.len());
    let mut acc = 0.0;
    let mut lower_breaks = peak_breaks(params, cutoffs.first().copied().unwrap_or(1.0));
    for (i, &lam) in cutoffs.iter().enumerate() {
        if i > 0 {
            lower_breaks = vec![cutoffs[i - 1], lam];
        }
        let spec = quad.with_truncation(Truncation::FixedUpper(lam)).with_period_hint(hint);
        let r = integrate_with_breaks(|w| kernel_g_unchecked(w, params, k, t), &lower_breaks, &spec)?;
        acc += r.value;
        out.push(scale * acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig() -> PhysParams {
        PhysParams::figure_defaults()
    }

    #[test]
    fn k_at_zero_and_before() {
        let k0 = memory_coefficient_k(&fig(), 0.0).unwrap();
        assert!((k0 - 1.074023).abs() < 1e-5, "{k0}");
        assert_eq!(memory_coefficient_k(&fig(), -1.0).unwrap(), 1.0);
        assert_eq!(memory_coefficient_k(&fig().with_g(0.0), 7.0).unwrap(), 1.0);
        assert!(memory_coefficient_k(&fig(), 200.0).unwrap() < 1e-20);
    }

    #[test]
    fn k_zero_is_sum_of_squares() {
        // K(0⁺) = |α₀₀|²n₀ + |β₀₀|²(n₀ + 1) at n₀ = 1
        let a = alpha00_continuum(&fig(), 0.0).unwrap();
        let b = beta00_continuum(&fig(), 0.0).unwrap();
        let k0 = memory_coefficient_k(&fig(), 0.0).unwrap();
        assert!((a.norm_sqr() + 2.0 * b.norm_sqr() - k0).abs() < 1e-12);
    }

    #[test]
    fn beta00_initial_value() {
        let b = beta00_continuum(&fig(), 1e-12).unwrap();
        assert!(b.re.abs() < 1e-10);
        assert!((b.im - PI * 0.1 / 2.0).abs() < 1e-9);
        let a = alpha00_continuum(&fig(), 0.0).unwrap();
        let g = 0.1;
        assert!((a.norm_sqr() + b.norm_sqr() - (1.0 + PI * PI * g * g / 2.0)).abs() < 1e-9);
    }

    #[test]
    fn envelopes_decay() {
        assert!(alpha00_continuum(&fig(), 200.0).unwrap().norm() < 1e-12);
        assert!(beta00_continuum(&fig(), 200.0).unwrap().norm() < 1e-12);
    }

    #[test]
    fn f_limits() {
        let p = fig();
        let w = 1.7;
        let late = kernel_f(w, &p, 400.0).unwrap();
        assert!((late - kernel_f_longtime(w, &p)).abs() < 1e-12);
        let a = kernel_f(1e-6, &p, 3.0).unwrap();
        let b = kernel_f(2e-6, &p, 3.0).unwrap();
        assert!((b / a - 2.0).abs() < 1e-5);
    }

    #[test]
    fn g_grouping_matches_printed_form() {
        let p = fig();
        let k = kappa(&p).unwrap();
        let (wb, pg) = (1.0f64, PI * 0.1);
        let printed = |w: f64, t: f64| {
            let dm = w - wb;
            let dp = w + wb;
            let d = lorentz_denominator(w, &p);
            w * dm * dm / d
                * (1.0
                    + (-pg * t).exp() / (4.0 * k * k)
                        * (4.0 * wb * wb + 2.0 * pg * pg * wb * w / (dm * dm)
                            - pg * pg * (w * w + wb * wb) / (dm * dm) * (2.0 * k * t).cos()
                            - 2.0 * pg * k * dp / dm * (2.0 * k * t).sin())
                    - (-0.5 * pg * t).exp() / k
                        * (2.0 * k * (w * t).cos() * (k * t).cos() - 2.0 * wb * (w * t).sin() * (k * t).sin()
                            - pg * dp / dm * (w * t).cos() * (k * t).sin()))
        };
        for &(w, t) in &[(0.3, 1.0), (1.4, 2.5), (3.0, 7.0), (20.0, 0.5)] {
            let g = kernel_g(w, &p, t).unwrap();
            assert!((g - printed(w, t)).abs() < 1e-12 * g.abs().max(1.0), "{w} {t}");
        }
        // finite straight through resonance
        let at = kernel_g(1.0, &p, 3.0).unwrap();
        let near = kernel_g(1.0 + 1e-7, &p, 3.0).unwrap();
        assert!(at.is_finite() && (at - near).abs() < 1e-6);
    }

    #[test]
    fn g_has_inverse_tail() {
        let p = fig();
        let t = 20.0;
        let c = kernel_g_tail_coefficient(&p, t).unwrap();
        // average over one period of cos(ωt) to remove the oscillating part
        let w0 = 5000.0;
        let n = 2000;
        let period = 2.0 * PI / t;
        let avg: f64 = (0..n)
            .map(|i| {
                let w = w0 + period * (i as f64 + 0.5) / n as f64;
                w * kernel_g(w, &p, t).unwrap()
            })
            .sum::<f64>()
            / n as f64;
        assert!((avg - c).abs() < 1e-3, "{avg} vs {c}");
    }
}
