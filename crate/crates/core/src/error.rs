use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// κ² = ω̄² − π²g²/4 is not positive; the continuum closed forms do not apply.
    #[error("strong coupling: kappa^2 = {kappa_squared:e} <= 0")]
    StrongCoupling { kappa_squared: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("real argument {0} needs a branch side (upper or lower)")]
    AmbiguousBranch(f64),

    #[error("evaluation at a pole: {0}")]
    Pole(f64),

    /// A normal mode with Ω² ≤ 0 (runaway solution).
    #[error("unstable normal mode {mode}: Omega^2 = {omega_squared:e}")]
    Stability { mode: usize, omega_squared: f64 },

    #[error("no sign change of the secular residual in ({lo}, {hi})")]
    Bracket { lo: f64, hi: f64 },

    #[error("quadrature did not converge: value {value:e}, error estimate {error_estimate:e}, tolerance {tolerance:e} after {subdivisions} subdivisions")]
    Quadrature {
        value: f64,
        error_estimate: f64,
        tolerance: f64,
        subdivisions: usize,
    },

    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),

    #[error("pole at {0} is not simple")]
    PoleOrder(f64),

    #[error("index {index} out of range for {len} modes")]
    Index { index: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
