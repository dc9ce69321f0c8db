//! Normal modes of the particle + cavity system.
//!
//! Roots are stored as an offset from the nearest bath frequency,
//! Ω_r = ω_k + δ_r (ω_0 ≡ 0), and every denominator is formed as
//! ω_j² − Ω² = ((j − k)Δω − δ)((j + k)Δω + δ). Near a pole the secular
//! function is steep (slope ~ η²Ω³/δ²), so a root held as a single `f64`
//! cannot reach residuals of 1e-12; the split representation can.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::model::{CavityConfig, PhysParams};

/// Largest N accepted by [`SpectrumMethod::DenseEigenOracle`].
pub const DENSE_ORACLE_CAP: usize = 512;

const MAX_POLISH_ITERATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    /// Roots of the truncated secular equation, t_0^r from explicit normalization.
    FiniteSecular,
    /// Roots of the N → ∞ cotangent equation, t_0^r from its closed form.
    CavityCotangent,
    /// Symmetric diagonalization of the (N+1)×(N+1) potential matrix.
    DenseEigenOracle,
}

/// Eigenfrequencies Ω_r and the orthogonal matrix t_μ^r (rows μ = particle,
/// bath modes 1..N; columns r = normal modes).
#[derive(Debug, Clone)]
pub struct NormalModeBasis {
    omegas: Vec<f64>,
    pole: Vec<usize>,
    offset: Vec<f64>,
    t: DMatrix<f64>,
    pub config: CavityConfig,
    pub params: PhysParams,
    pub method: SpectrumMethod,
    raw_defect: Option<f64>,
}

impl NormalModeBasis {
    /// Number of modes, N + 1.
    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    /// Number of bath modes N.
    pub fn bath_modes(&self) -> usize {
        self.omegas.len() - 1
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn omega(&self, r: usize) -> f64 {
        self.omegas[r]
    }

    /// Ω_r as (k, δ) with Ω_r = kΔω + δ.
    pub fn split_root(&self, r: usize) -> (usize, f64) {
        (self.pole[r], self.offset[r])
    }

    /// t_μ^r.
    pub fn t(&self, mu: usize, r: usize) -> f64 {
        self.t[(mu, r)]
    }

    /// Particle row t_0^r.
    pub fn t0(&self) -> Vec<f64> {
        self.t.row(0).iter().copied().collect()
    }

    /// Row μ of the transformation matrix.
    pub fn row(&self, mu: usize) -> Vec<f64> {
        self.t.row(mu).iter().copied().collect()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.t
    }

    /// Bare frequency of oscillator μ: ω̄ for the particle, ω_μ for the bath.
    pub fn bare_frequency(&self, mu: usize) -> f64 {
        if mu == 0 {
            self.params.omega_bar
        } else {
            self.config.bath_frequency(mu)
        }
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::Index {
                index,
                len: self.len(),
            })
        }
    }

    /// Orthonormality defect of the closed-form columns before they were
    /// renormalized (cotangent bases only).
    pub fn raw_defect(&self) -> Option<f64> {
        self.raw_defect
    }

    /// Secular residual of mode r evaluated in the split representation:
    /// the finite sum for finite and dense bases, the cotangent form otherwise.
    pub fn residual(&self, r: usize) -> f64 {
        match self.method {
            SpectrumMethod::CavityCotangent => {
                cotangent_split(self.pole[r], self.offset[r], &self.config, &self.params).0
            }
            _ => secular_split(self.pole[r], self.offset[r], &self.config, &self.params).0,
        }
    }

    /// One Ω_r in (0, ω_1), one in each (ω_k, ω_{k+1}), one above ω_N.
    pub fn interlacing_holds(&self) -> bool {
        let n = self.bath_modes();
        (0..=n).all(|r| {
            let lo = if r == 0 { 0.0 } else { self.config.bath_frequency(r) };
            let w = self.omegas[r];
            w > lo && (r == n || w < self.config.bath_frequency(r + 1))
        })
    }

    /// Discrete spectral weight (t_0^r)²/ΔΩ_r with the centred spacing
    /// ΔΩ_r = (Ω_{r+1} − Ω_{r−1})/2; end points are skipped.
    pub fn discrete_weight(&self) -> Vec<(f64, f64)> {
        (1..self.len().saturating_sub(1))
            .map(|r| {
                let spacing = 0.5 * (self.omegas[r + 1] - self.omegas[r - 1]);
                (self.omegas[r], self.t[(0, r)].powi(2) / spacing)
            })
            .collect()
    }
}

/// ω_j² − Ω² with Ω = kΔω + δ.
#[inline]
fn pole_gap(j: usize, k: usize, delta: f64, dw: f64) -> f64 {
    let diff = (j as f64 - k as f64) * dw - delta;
    let sum = (j + k) as f64 * dw + delta;
    diff * sum
}

/// Finite secular residual and its Ω-derivative at Ω = kΔω + δ.
fn secular_split(k: usize, delta: f64, config: &CavityConfig, params: &PhysParams) -> (f64, f64) {
    let dw = config.delta_omega();
    let eta2 = config.eta(params.g).powi(2);
    let omega = k as f64 * dw + delta;
    let x = omega * omega;
    let mut sum = 0.0;
    let mut dsum = 0.0;
    for j in 1..=config.modes {
        let d = pole_gap(j, k, delta, dw);
        let wj = j as f64 * dw;
        sum += 1.0 / d;
        dsum += wj * wj / (d * d);
    }
    let wb2 = params.omega_bar * params.omega_bar;
    let value = wb2 - x - eta2 * x * sum;
    let deriv = -2.0 * omega * (1.0 + eta2 * dsum);
    (value, deriv)
}

/// Cotangent residual and derivative at Ω = kΔω + δ, using cot(RΩ/c) = cot(Rδ/c).
fn cotangent_split(k: usize, delta: f64, config: &CavityConfig, params: &PhysParams) -> (f64, f64) {
    let dw = config.delta_omega();
    let omega = k as f64 * dw + delta;
    let scale = config.radius / config.speed;
    let phi = scale * delta;
    let (s, c) = phi.sin_cos();
    let pg = PI * params.g;
    let wb2 = params.omega_bar * params.omega_bar;
    let rhs = omega / pg + (1.0 / (scale * omega)) * (1.0 - scale * wb2 / pg);
    let value = c / s - rhs;
    let drhs = 1.0 / pg - (1.0 / (scale * omega * omega)) * (1.0 - scale * wb2 / pg);
    let deriv = -scale / (s * s) - drhs;
    (value, deriv)
}

/// Decreasing function with h(lo) > 0 > h(hi) (endpoints are never sampled).
/// Safeguarded Newton inside the shrinking bracket, bisection fallback.
fn polish<H: Fn(f64) -> (f64, f64)>(h: H, mut lo: f64, mut hi: f64) -> f64 {
    let mut x = 0.5 * (lo + hi);
    let mut best = (f64::INFINITY, x);
    for _ in 0..MAX_POLISH_ITERATIONS {
        let (v, dv) = h(x);
        if v.abs() < best.0 {
            best = (v.abs(), x);
        }
        if v == 0.0 {
            return x;
        }
        if v > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - v / dv;
        let next = if dv.is_finite() && dv != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == x || hi - lo <= 2.0 * f64::EPSILON * x.abs().max(lo.abs()).max(hi.abs()).max(f64::MIN_POSITIVE) {
            let (v, _) = h(next);
            if v.abs() < best.0 {
                best = (v.abs(), next);
            }
            break;
        }
        x = next;
    }
    best.1
}

/// Root of `residual` between the poles k and k+1 (`top` = the open interval
/// above ω_N). Returns the root split against the nearer pole.
fn root_in_interval<F>(k: usize, top: bool, residual: F, config: &CavityConfig, params: &PhysParams) -> Result<(usize, f64)>
where
    F: Fn(usize, f64) -> (f64, f64),
{
    let dw = config.delta_omega();
    if !top {
        let half = 0.5 * dw;
        let (mid, _) = residual(k, half);
        if !mid.is_finite() {
            return Err(Error::NonFinite(k as f64 * dw + half));
        }
        if mid > 0.0 {
            // root in (ω_k + Δω/2, ω_{k+1})
            let d = polish(|d| residual(k + 1, d), -half, 0.0);
            Ok((k + 1, d))
        } else if mid < 0.0 {
            let d = polish(|d| residual(k, d), 0.0, half);
            Ok((k, d))
        } else {
            Ok((k, half))
        }
    } else {
        // above ω_N: trace bound, expanded geometrically on failure
        let n = config.modes as f64;
        let wn = config.cutoff();
        let eta2 = config.eta(params.g).powi(2);
        let mut hi = n * eta2 / wn + params.omega_bar + dw;
        let mut tries = 0;
        while residual(k, hi).0 >= 0.0 {
            hi *= 2.0;
            tries += 1;
            if tries > 200 || !hi.is_finite() {
                return Err(Error::Bracket {
                    lo: wn,
                    hi: wn + hi,
                });
            }
        }
        let d = polish(|d| residual(k, d), 0.0, hi);
        Ok((k, d))
    }
}

/// ω̄² − Ω² − η²Ω² Σ_{k=1}^{N} 1/(ω_k² − Ω²).
pub fn secular_residual_finite(omega: f64, config: &CavityConfig, params: &PhysParams) -> Result<f64> {
    if params.g == 0.0 {
        // η = 0: no pole terms at all
        return Ok(params.omega_bar * params.omega_bar - omega * omega);
    }
    let (k, delta) = split_against_poles(omega, config)?;
    Ok(secular_split(k, delta, config, params).0)
}

/// cot(RΩ/c) − Ω/(πg) − (c/(RΩ))(1 − Rω̄²/(πgc)).
pub fn cotangent_residual(omega: f64, config: &CavityConfig, params: &PhysParams) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("cotangent residual needs Omega > 0, got {omega}")));
    }
    if !(params.g > 0.0) {
        return Err(Error::InvalidParameter("cotangent form needs g > 0".into()));
    }
    let dw = config.delta_omega();
    let k = (omega / dw).round();
    let delta = omega - k * dw;
    if delta.abs() <= 1e-14 * omega {
        return Err(Error::Pole(omega));
    }
    Ok(cotangent_split(k as usize, delta, config, params).0)
}

fn split_against_poles(omega: f64, config: &CavityConfig) -> Result<(usize, f64)> {
    let dw = config.delta_omega();
    let k = ((omega / dw).round().max(0.0) as usize).min(config.modes);
    let delta = omega - k as f64 * dw;
    if k >= 1 && delta.abs() <= 1e-14 * (k as f64 * dw) {
        return Err(Error::Pole(omega));
    }
    Ok((k, delta))
}

/// ω̄ from a bare particle frequency ω₀ via ω̄² = ω₀² − Nη². A non-positive
/// ω̄² gives a runaway normal mode; the error carries its Ω² (≤ 0).
pub fn renormalized_frequency(omega0: f64, g: f64, config: &CavityConfig) -> Result<f64> {
    config.validate()?;
    if !(omega0 >= 0.0) || !(g >= 0.0) {
        return Err(Error::InvalidParameter("omega0 and g must be non-negative".into()));
    }
    let eta2 = config.eta(g).powi(2);
    let wb2 = omega0 * omega0 - config.modes as f64 * eta2;
    if wb2 > 0.0 {
        return Ok(wb2.sqrt());
    }
    let f = |x: f64| {
        let s: f64 = config.bath_frequencies().iter().map(|w| x / (w * w - x)).sum();
        wb2 - x - eta2 * s
    };
    let mut lo = -1.0;
    while f(lo) <= 0.0 && lo > -1e300 {
        lo *= 2.0;
    }
    let mut hi = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Stability {
        mode: 0,
        omega_squared: if wb2 == 0.0 { 0.0 } else { 0.5 * (lo + hi) },
    })
}

pub fn solve_spectrum(config: &CavityConfig, params: &PhysParams, method: SpectrumMethod) -> Result<NormalModeBasis> {
    config.validate()?;
    params.validate()?;
    if params.g == 0.0 {
        return Ok(identity_basis(config, params, method));
    }
    match method {
        SpectrumMethod::FiniteSecular => finite_secular(config, params),
        SpectrumMethod::CavityCotangent => cavity_cotangent(config, params),
        SpectrumMethod::DenseEigenOracle => dense_oracle(config, params),
    }
}

/// Decoupled system: Ω = (ω̄, ω_1, …, ω_N), t = identity.
fn identity_basis(config: &CavityConfig, params: &PhysParams, method: SpectrumMethod) -> NormalModeBasis {
    let n = config.modes;
    let mut omegas = vec![params.omega_bar];
    omegas.extend(config.bath_frequencies());
    let mut pole = vec![0];
    pole.extend(1..=n);
    let mut offset = vec![params.omega_bar];
    offset.extend(std::iter::repeat_n(0.0, n));
    NormalModeBasis {
        omegas,
        pole,
        offset,
        t: DMatrix::identity(n + 1, n + 1),
        config: *config,
        params: *params,
        method,
        raw_defect: if method == SpectrumMethod::CavityCotangent { Some(0.0) } else { None },
    }
}

fn finite_secular(config: &CavityConfig, params: &PhysParams) -> Result<NormalModeBasis> {
    let n = config.modes;
    let residual = |k: usize, d: f64| secular_split(k, d, config, params);
    let mut pole = Vec::with_capacity(n + 1);
    let mut offset = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (p, d) = root_in_interval(k, k == n, residual, config, params)?;
        pole.push(p);
        offset.push(d);
    }
    let eta = config.eta(params.g);
    let dw = config.delta_omega();
    let mut t = DMatrix::zeros(n + 1, n + 1);
    for r in 0..=n {
        let (k, d) = (pole[r], offset[r]);
        let mut norm = 1.0;
        for j in 1..=n {
            let c = eta * (j as f64 * dw) / pole_gap(j, k, d, dw);
            norm += c * c;
        }
        let t0 = norm.sqrt().recip();
        t[(0, r)] = t0;
        for j in 1..=n {
            t[(j, r)] = eta * (j as f64 * dw) * t0 / pole_gap(j, k, d, dw);
        }
    }
    finish(pole, offset, t, config, params, SpectrumMethod::FiniteSecular, None)
}

fn cavity_cotangent(config: &CavityConfig, params: &PhysParams) -> Result<NormalModeBasis> {
    let n = config.modes;
    let residual = |k: usize, d: f64| cotangent_split(k, d, config, params);
    let mut pole = Vec::with_capacity(n + 1);
    let mut offset = Vec::with_capacity(n + 1);
    for k in 0..=n {
        // every interval, including the top one, is bounded by the next pole here
        let (p, d) = root_in_interval(k, false, residual, config, params)?;
        pole.push(p);
        offset.push(d);
    }
    let eta = config.eta(params.g);
    let eta2 = eta * eta;
    let dw = config.delta_omega();
    let wb2 = params.omega_bar * params.omega_bar;
    let pg2 = (PI * params.g).powi(2);
    let mut t = DMatrix::zeros(n + 1, n + 1);
    for r in 0..=n {
        let (k, d) = (pole[r], offset[r]);
        let w = k as f64 * dw + d;
        let x = w * w;
        let t0 = eta * w / ((x - wb2).powi(2) + 0.5 * eta2 * (3.0 * x - wb2) + pg2 * x).sqrt();
        t[(0, r)] = t0;
        for j in 1..=n {
            t[(j, r)] = eta * (j as f64 * dw) * t0 / pole_gap(j, k, d, dw);
        }
    }
    let raw = row_defect(&t);
    for r in 0..=n {
        let norm = t.column(r).norm();
        t.column_mut(r).scale_mut(norm.recip());
    }
    finish(pole, offset, t, config, params, SpectrumMethod::CavityCotangent, Some(raw))
}

fn dense_oracle(config: &CavityConfig, params: &PhysParams) -> Result<NormalModeBasis> {
    let n = config.modes;
    if n > DENSE_ORACLE_CAP {
        return Err(Error::InvalidParameter(format!(
            "dense oracle limited to N <= {DENSE_ORACLE_CAP}, got {n}"
        )));
    }
    let eta = config.eta(params.g);
    let mut v = DMatrix::zeros(n + 1, n + 1);
    v[(0, 0)] = params.omega_bar.powi(2) + n as f64 * eta * eta;
    for k in 1..=n {
        let wk = config.bath_frequency(k);
        v[(k, k)] = wk * wk;
        v[(0, k)] = -eta * wk;
        v[(k, 0)] = -eta * wk;
    }
    let eig = SymmetricEigen::new(v);
    let mut order: Vec<usize> = (0..=n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut t = DMatrix::zeros(n + 1, n + 1);
    let mut pole = Vec::with_capacity(n + 1);
    let mut offset = Vec::with_capacity(n + 1);
    for (r, &idx) in order.iter().enumerate() {
        let lambda = eig.eigenvalues[idx];
        if !(lambda > 0.0) {
            return Err(Error::Stability {
                mode: r,
                omega_squared: lambda,
            });
        }
        let col = eig.eigenvectors.column(idx);
        let sign = if col[0] < 0.0 { -1.0 } else { 1.0 };
        for mu in 0..=n {
            t[(mu, r)] = sign * col[mu];
        }
        pole.push(0);
        offset.push(lambda.sqrt());
    }
    finish(pole, offset, t, config, params, SpectrumMethod::DenseEigenOracle, None)
}

fn finish(
    pole: Vec<usize>,
    offset: Vec<f64>,
    t: DMatrix<f64>,
    config: &CavityConfig,
    params: &PhysParams,
    method: SpectrumMethod,
    raw_defect: Option<f64>,
) -> Result<NormalModeBasis> {
    let dw = config.delta_omega();
    let omegas: Vec<f64> = pole.iter().zip(&offset).map(|(&k, &d)| k as f64 * dw + d).collect();
    for (r, &w) in omegas.iter().enumerate() {
        if !(w > 0.0) {
            return Err(Error::Stability {
                mode: r,
                omega_squared: w * w.abs(),
            });
        }
    }
    Ok(NormalModeBasis {
        omegas,
        pole,
        offset,
        t,
        config: *config,
        params: *params,
        method,
        raw_defect,
    })
}

fn row_defect(t: &DMatrix<f64>) -> f64 {
    let g = t * t.transpose();
    max_identity_defect(&g)
}

fn max_identity_defect(g: &DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).abs());
        }
    }
    worst
}

/// max_{μ,ν} |Σ_r t_μ^r t_ν^r − δ_{μν}|.
pub fn orthonormality_defect(basis: &NormalModeBasis) -> f64 {
    row_defect(&basis.t)
}

/// max_{r,s} |Σ_μ t_μ^r t_μ^s − δ_{rs}|.
pub fn column_orthonormality_defect(basis: &NormalModeBasis) -> f64 {
    max_identity_defect(&(basis.t.transpose() * &basis.t))
}

/// Partial sum Σ_{k=1}^{terms} 1/(k² − u²).
pub fn cotangent_sum_identity(u: f64, terms: usize) -> Result<f64> {
    check_non_integer(u)?;
    if terms == 0 {
        return Err(Error::InvalidParameter("need at least one term".into()));
    }
    // summed from the small end up for accuracy
    let mut s = 0.0;
    for k in (1..=terms).rev() {
        let kf = k as f64;
        s += 1.0 / ((kf - u) * (kf + u));
    }
    Ok(s)
}

/// (1/2)[1/u² − (π/u)cot(πu)], the limit of [`cotangent_sum_identity`].
pub fn cotangent_sum_closed(u: f64) -> Result<f64> {
    check_non_integer(u)?;
    if u.abs() < 1e-3 {
        // Σ ζ(2m) u^{2m−2}
        let u2 = u * u;
        let z2 = PI.powi(2) / 6.0;
        let z4 = PI.powi(4) / 90.0;
        let z6 = PI.powi(6) / 945.0;
        let z8 = PI.powi(8) / 9450.0;
        return Ok(z2 + u2 * (z4 + u2 * (z6 + u2 * z8)));
    }
    let pu = PI * u;
    Ok(0.5 * (1.0 / (u * u) - PI / (u * pu.tan())))
}

fn check_non_integer(u: f64) -> Result<()> {
    if !u.is_finite() {
        return Err(Error::Domain(format!("u must be finite, got {u}")));
    }
    if u != 0.0 && (u - u.round()).abs() <= 1e-14 * u.abs().max(1.0) {
        return Err(Error::Pole(u));
    }
    Ok(())
}

/// Continuum weight 2gΩ²/((Ω² − ω̄²)² + π²g²Ω²).
pub fn lorentzian_weight(omega: f64, params: &PhysParams) -> f64 {
    let x = omega * omega;
    let wb2 = params.omega_bar * params.omega_bar;
    2.0 * params.g * x / ((x - wb2).powi(2) + (PI * params.g).powi(2) * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: f64) -> PhysParams {
        PhysParams::new(1.0, g, 2.0, 1.0).unwrap()
    }

    #[test]
    fn residual_trivial_points() {
        let cfg = CavityConfig::new(PI, 1.0, 8).unwrap();
        assert_eq!(secular_residual_finite(1.0, &cfg, &params(0.0)).unwrap(), 0.0);
        assert_eq!(secular_residual_finite(0.0, &cfg, &params(0.1)).unwrap(), 1.0);
        let above = secular_residual_finite(1.0 + 1e-6, &cfg, &params(0.1)).unwrap();
        let below = secular_residual_finite(1.0 - 1e-6, &cfg, &params(0.1)).unwrap();
        // just above ω_1 the pole term −η²Ω²/(ω_1² − Ω²) is large and positive
        assert!(above > 1e4 && below < -1e4);
        let brute = |w: f64| {
            let eta2 = cfg.eta(0.1).powi(2);
            let s: f64 = (1..=8).map(|k| 1.0 / ((k * k) as f64 - w * w)).sum();
            1.0 - w * w - eta2 * w * w * s
        };
        assert!((above - brute(1.0 + 1e-6)).abs() < 1e-6 * above.abs());
        assert!(matches!(secular_residual_finite(2.0, &cfg, &params(0.1)), Err(Error::Pole(_))));
    }

    #[test]
    fn three_mode_problem_matches_dense() {
        let cfg = CavityConfig::new(PI, 1.0, 2).unwrap();
        let a = solve_spectrum(&cfg, &params(0.1), SpectrumMethod::FiniteSecular).unwrap();
        let b = solve_spectrum(&cfg, &params(0.1), SpectrumMethod::DenseEigenOracle).unwrap();
        for r in 0..3 {
            assert!((a.omega(r) - b.omega(r)).abs() < 1e-10 * b.omega(r));
            for mu in 0..3 {
                assert!((a.t(mu, r) - b.t(mu, r)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn decoupled_identity() {
        let cfg = CavityConfig::new(10.0 * PI, 1.0, 5).unwrap();
        let b = solve_spectrum(&cfg, &params(0.0), SpectrumMethod::FiniteSecular).unwrap();
        assert_eq!(b.omegas()[0], 1.0);
        assert_eq!(b.omegas()[3], cfg.bath_frequency(3));
        assert_eq!(orthonormality_defect(&b), 0.0);
    }

    #[test]
    fn cotangent_roots_bracketed() {
        let cfg = CavityConfig::new(10.0 * PI, 1.0, 40).unwrap();
        let b = solve_spectrum(&cfg, &params(0.1), SpectrumMethod::CavityCotangent).unwrap();
        assert!(b.interlacing_holds());
        for r in 0..b.len() {
            assert!(b.residual(r).abs() < 1e-10, "r={r} {}", b.residual(r));
        }
        assert!(b.raw_defect().unwrap() > 0.0);
    }

    #[test]
    fn cotangent_large_coupling_limit() {
        let cfg = CavityConfig::new(1.0, 1.0, 4).unwrap();
        let w = 0.7;
        let v = cotangent_residual(w, &cfg, &params(0.1).with_g(1e12)).unwrap();
        let limit = 1.0 / (w.tan()) - 1.0 / w;
        assert!((v - limit).abs() < 1e-9);
    }

    #[test]
    fn cotangent_sum_values() {
        assert!((cotangent_sum_closed(0.5).unwrap() - 2.0).abs() < 1e-14);
        let partial = cotangent_sum_identity(0.25, 1_000_000).unwrap();
        let closed = 0.5 * (16.0 - 4.0 * PI / (PI / 4.0).tan());
        assert!((partial - closed).abs() < 1e-5);
        assert!((cotangent_sum_closed(1e-5).unwrap() - PI * PI / 6.0).abs() < 1e-9);
        assert!(matches!(cotangent_sum_identity(3.0, 10), Err(Error::Pole(_))));
    }

    #[test]
    fn runaway_mode_detected() {
        let cfg = CavityConfig::new(PI, 1.0, 10).unwrap();
        // Nη² = 10·2·0.5·1 = 10 > ω₀² = 1
        match renormalized_frequency(1.0, 0.5, &cfg) {
            Err(Error::Stability { omega_squared, .. }) => assert!(omega_squared < 0.0),
            other => panic!("{other:?}"),
        }
        let wb = renormalized_frequency(5.0, 0.5, &cfg).unwrap();
        assert!((wb - 15.0f64.sqrt()).abs() < 1e-12);
    }
}
