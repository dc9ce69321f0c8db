//! Parameter types and the elementary closed forms shared by every solver.
//!
//! Units: ħ = 1. Frequencies may be given in any consistent unit; the CLI
//! and the figures use ω̄ = 1.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex numbers used throughout (contour values, Bogoliubov coefficients,
/// probability amplitudes).
pub type ComplexValue = Complex64;

/// Physical parameters of the particle and the bath temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    /// Renormalized particle frequency ω̄.
    pub omega_bar: f64,
    /// Ohmic coupling strength g (a frequency), g = η²/(2Δω).
    pub g: f64,
    /// Inverse bath temperature β.
    pub beta: f64,
    /// Initial particle occupation n₀ (also used as the dressed n′₀).
    pub n0_init: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingRegime {
    Weak,
    Strong,
}

impl PhysParams {
    pub fn new(omega_bar: f64, g: f64, beta: f64, n0_init: f64) -> Result<Self> {
        let p = Self {
            omega_bar,
            g,
            beta,
            n0_init,
        };
        p.validate()?;
        Ok(p)
    }

    /// ω̄ = 1, g = 0.1, β = 2, n₀ = 1: the parameter set of both figures.
    pub fn figure_defaults() -> Self {
        Self {
            omega_bar: 1.0,
            g: 0.1,
            beta: 2.0,
            n0_init: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega_bar, self.g, self.beta, self.n0_init]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if self.omega_bar <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega_bar must be positive, got {}",
                self.omega_bar
            )));
        }
        if self.g < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "g must be non-negative, got {}",
                self.g
            )));
        }
        if self.beta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if self.n0_init < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "n0 must be non-negative, got {}",
                self.n0_init
            )));
        }
        Ok(())
    }

    pub fn with_n0(self, n0_init: f64) -> Self {
        Self { n0_init, ..self }
    }

    pub fn with_g(self, g: f64) -> Self {
        Self { g, ..self }
    }

    pub fn with_beta(self, beta: f64) -> Self {
        Self { beta, ..self }
    }

    /// κ² = ω̄² − π²g²/4.
    pub fn kappa_squared(&self) -> f64 {
        self.omega_bar * self.omega_bar - 0.25 * PI * PI * self.g * self.g
    }

    /// Returns the weak-coupling κ or [`Error::StrongCoupling`].
    pub fn require_weak(&self) -> Result<f64> {
        kappa(self)
    }
}

/// κ = √(ω̄² − π²g²/4), the damped oscillation frequency.
pub fn kappa(params: &PhysParams) -> Result<f64> {
    let k2 = params.kappa_squared();
    if k2 > 0.0 {
        Ok(k2.sqrt())
    } else {
        Err(Error::StrongCoupling { kappa_squared: k2 })
    }
}

pub fn coupling_regime(params: &PhysParams) -> CouplingRegime {
    if params.kappa_squared() > 0.0 {
        CouplingRegime::Weak
    } else {
        CouplingRegime::Strong
    }
}

/// Bose-Einstein occupation 1/(e^{βω} − 1).
pub fn bose_occupation(omega: f64, beta: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("bose occupation needs omega > 0, got {omega}")));
    }
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("bose occupation needs beta > 0, got {beta}")));
    }
    Ok(bose_unchecked(omega, beta))
}

/// Same as [`bose_occupation`] without argument checks, for integrand loops.
#[inline]
pub(crate) fn bose_unchecked(omega: f64, beta: f64) -> f64 {
    (beta * omega).exp_m1().recip()
}

/// Finite cavity: radius R, wave speed c and the number of retained bath modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    pub radius: f64,
    pub speed: f64,
    pub modes: usize,
}

impl CavityConfig {
    pub fn new(radius: f64, speed: f64, modes: usize) -> Result<Self> {
        let c = Self {
            radius,
            speed,
            modes,
        };
        c.validate()?;
        Ok(c)
    }

    /// Cavity whose mode spacing is `delta_omega` (R = πc/Δω with c = 1).
    pub fn with_spacing(delta_omega: f64, modes: usize) -> Result<Self> {
        Self::new(PI / delta_omega, 1.0, modes)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "cavity radius must be positive, got {}",
                self.radius
            )));
        }
        if !(self.speed > 0.0 && self.speed.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "wave speed must be positive, got {}",
                self.speed
            )));
        }
        if self.modes == 0 {
            return Err(Error::InvalidParameter("need at least one bath mode".into()));
        }
        Ok(())
    }

    /// Δω = πc/R.
    pub fn delta_omega(&self) -> f64 {
        PI * self.speed / self.radius
    }

    /// ω_k = kπc/R, k = 1..=N.
    pub fn bath_frequency(&self, k: usize) -> f64 {
        k as f64 * self.delta_omega()
    }

    pub fn bath_frequencies(&self) -> Vec<f64> {
        (1..=self.modes).map(|k| self.bath_frequency(k)).collect()
    }

    /// η = √(2gΔω).
    pub fn eta(&self, g: f64) -> f64 {
        (2.0 * g * self.delta_omega()).sqrt()
    }

    /// Highest retained bath frequency ω_N.
    pub fn cutoff(&self) -> f64 {
        self.bath_frequency(self.modes)
    }
}

/// Which side of the real axis a real argument of W is approached from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// Continuum function W(z) = z² − ω̄² + 2gz²∫₀^∞ dω/(ω² − z²):
/// z² + iπgz − ω̄² above the real axis, z² − iπgz − ω̄² below.
///
/// A real `z` needs an explicit `side`; for real α the boundary values are
/// W(α ± i0) = α² − ω̄² ± iπgα.
pub fn w_continuum(z: ComplexValue, side: Option<Side>, params: &PhysParams) -> Result<ComplexValue> {
    let upper = if z.im > 0.0 {
        true
    } else if z.im < 0.0 {
        false
    } else {
        match side {
            Some(Side::Upper) => true,
            Some(Side::Lower) => false,
            None => return Err(Error::AmbiguousBranch(z.re)),
        }
    };
    let sign = if upper { 1.0 } else { -1.0 };
    let ipg = ComplexValue::new(0.0, sign * PI * params.g);
    Ok(z * z + ipg * z - params.omega_bar * params.omega_bar)
}
