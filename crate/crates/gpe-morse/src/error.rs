//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The minimized variational energy is non-negative, so the trial
    /// family no longer certifies a bound state (lambda >= lambda_c).
    #[error("no bound state: minimized energy {energy:.6} is non-negative")]
    NoBoundState { energy: f64 },

    #[error("minimizer did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("no sign change of the binding criterion for lambda in (0, {lambda_max}]")]
    BracketFailure { lambda_max: f64 },

    /// The packet escapes already at `p0 = 0`; there is no threshold
    /// momentum in this regime (gamma > gamma_c).
    #[error("no threshold: the packet escapes for every initial momentum")]
    NoThreshold,

    #[error("width collapse at t = {t:.6}: squared width reached the floor {s_min:e}")]
    WidthCollapse { t: f64, s_min: f64 },

    #[error("adaptive step underflow at t = {t:.6}")]
    StepUnderflow { t: f64 },

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("grid too narrow: boundary amplitude {amplitude:e} exceeds {limit:e}")]
    GridTooNarrow { amplitude: f64, limit: f64 },

    #[error("norm drift {drift:e} at t = {t:.6}")]
    NormDrift { t: f64, drift: f64 },

    #[error("boundary leak at t = {t:.6}: |psi| = {amplitude:e} at the right edge")]
    BoundaryLeak { t: f64, amplitude: f64 },

    /// Imaginary-time flow pushes the state toward x -> +infinity instead
    /// of relaxing onto a localized ground state.
    #[error("imaginary-time flow drifts unbound (<x> = {x_mean:.3})")]
    UnboundDrift { x_mean: f64 },

    #[error("imaginary-time evolution did not converge within {steps} steps")]
    NoConvergence { steps: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
