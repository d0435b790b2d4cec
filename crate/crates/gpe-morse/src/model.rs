//! Core model: the Morse potential, the physical-to-dimensionless map and
//! the Gaussian-packet expectation identities.
//!
//! Everything downstream works with the dimensionless trap depth
//! `K = sqrt(2 m D) / (hbar a)` and the couplings `gamma` (dynamics) and
//! `lambda = sqrt(2 pi) gamma K^2 / 2` (bound-state theory).

use serde::Serialize;

use crate::error::{Error, Result};

pub const SQRT_TWO_PI: f64 = 2.5066282746310002;

/// Physical Morse trap parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MorseParams {
    /// Well depth `D` (energy, > 0).
    pub depth: f64,
    /// Inverse length scale `a` (> 0).
    pub inv_length: f64,
    /// Particle mass `m` (> 0).
    pub mass: f64,
    /// Reduced Planck constant (> 0).
    pub hbar: f64,
}

impl MorseParams {
    pub fn new(depth: f64, inv_length: f64, mass: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [
            ("depth", depth),
            ("inv_length", inv_length),
            ("mass", mass),
            ("hbar", hbar),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        let params = Self { depth, inv_length, mass, hbar };
        let k = params.k();
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "derived K = {k} is not finite and positive"
            )));
        }
        Ok(params)
    }

    /// Dimensionless depth parameter `K = sqrt(2 m D) / (hbar a)`.
    pub fn k(&self) -> f64 {
        (2.0 * self.mass * self.depth).sqrt() / (self.hbar * self.inv_length)
    }
}

/// Dimensionless reduction of the trap and packet parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledParams {
    pub k: f64,
    pub gamma: f64,
    /// Bound-state coupling; `lambda = sqrt(2 pi) gamma K^2 / 2` by construction.
    pub lambda: f64,
    /// Initial dimensionless width (> 0).
    pub delta0: f64,
    /// Initial dimensionless momentum (>= 0).
    pub p0: f64,
}

impl ScaledParams {
    pub fn new(k: f64, gamma: f64, delta0: f64, p0: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidParameter(format!("K must be positive, got {k}")));
        }
        if !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!("gamma must be finite, got {gamma}")));
        }
        if !(delta0 > 0.0 && delta0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "delta0 must be positive, got {delta0}"
            )));
        }
        if !(p0 >= 0.0 && p0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "p0 must be non-negative, got {p0}"
            )));
        }
        Ok(Self { k, gamma, lambda: gamma_to_lambda(gamma, k), delta0, p0 })
    }

    /// Builds the parameter set from the bound-state coupling instead.
    pub fn from_lambda(k: f64, lambda: f64, delta0: f64, p0: f64) -> Result<Self> {
        Self::new(k, lambda_to_gamma(lambda, k), delta0, p0)
    }
}

/// `lambda = sqrt(2 pi) gamma K^2 / 2`.
pub fn gamma_to_lambda(gamma: f64, k: f64) -> f64 {
    SQRT_TWO_PI * gamma * k * k / 2.0
}

/// Inverse of [`gamma_to_lambda`].
pub fn lambda_to_gamma(lambda: f64, k: f64) -> f64 {
    2.0 * lambda / (SQRT_TWO_PI * k * k)
}

/// Dimensionless Morse potential `exp(-2x) - 2 exp(-x)`.
///
/// Minimum -1 at `x = 0`, vanishing as `x -> +inf`. Far into the left wall
/// the value saturates to `+inf` instead of producing a NaN.
pub fn morse_potential(x: f64) -> f64 {
    let y = (-x).exp();
    if y.is_infinite() {
        f64::INFINITY
    } else {
        y * y - 2.0 * y
    }
}

/// Maps physical trap/packet parameters onto the dimensionless set.
///
/// Lengths scale by `a`, momenta by `1/sqrt(m D)` and the coupling by
/// `gamma = a g / (sqrt(2 pi) D)`.
pub fn scale_params(
    phys: &MorseParams,
    g: f64,
    delta0_phys: f64,
    p0_phys: f64,
) -> Result<ScaledParams> {
    if !g.is_finite() {
        return Err(Error::InvalidParameter(format!("g must be finite, got {g}")));
    }
    let k = phys.k();
    let gamma = phys.inv_length * g / (SQRT_TWO_PI * phys.depth);
    let delta0 = phys.inv_length * delta0_phys;
    let p0 = p0_phys / (phys.mass * phys.depth).sqrt();
    ScaledParams::new(k, gamma, delta0, p0)
}

/// Expectation `<exp(-k x)>` over the normalized Gaussian packet of width
/// `delta` centered at `x0`: `exp(-k x0 + k^2 delta^2 / 4)`.
///
/// Only the exponent scales `k = 1, 2` appear in the moment equations.
pub fn gaussian_exp_moment(x0: f64, delta: f64, k: u32) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    if k != 1 && k != 2 {
        return Err(Error::InvalidParameter(format!("k must be 1 or 2, got {k}")));
    }
    let kf = f64::from(k);
    // exp overflow saturates to +inf, which is the intended behavior deep
    // in the left wall.
    Ok((-kf * x0 + kf * kf * delta * delta / 4.0).exp())
}

/// `int |psi|^4 dx = 1 / (sqrt(2 pi) delta)` for the normalized Gaussian.
pub fn quartic_norm(delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    Ok(1.0 / (SQRT_TWO_PI * delta))
}

/// Initial mean energy (in units of `D`) of a packet released at the
/// potential minimum:
///
/// `E0/D = 1/(2 K^2 d0) + p0^2/2 + [exp(d0^2) - 2 exp(d0^2/4)] + gamma/d0`.
///
/// The kinetic-spread term carries the first power of `d0`; together with
/// the threshold momenta this reproduces the reported threshold energies.
pub fn initial_energy(sp: &ScaledParams) -> Result<f64> {
    if !(sp.delta0 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "delta0 must be positive, got {}",
            sp.delta0
        )));
    }
    let d = sp.delta0;
    let d2 = d * d;
    Ok(1.0 / (2.0 * sp.k * sp.k * d) + sp.p0 * sp.p0 / 2.0 + (d2.exp() - 2.0 * (d2 / 4.0).exp())
        + sp.gamma / d)
}
