//! Log-gamma and digamma evaluation.
//!
//! The variational energy involves the ratio Gamma(4a)/Gamma(2a)^2 whose
//! factors overflow already for moderate exponents, so everything is done
//! through `ln_gamma`. The Lanczos coefficients below (g = 607/128, 15
//! terms) give close to machine precision for positive arguments, which
//! the finite-difference consistency tests of the minimization gradient
//! rely on.

const LANCZOS_G: f64 = 607.0 / 128.0;

const LANCZOS_COEFFS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma requires a positive argument");
    let mut sum = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (x - 1.0 + k as f64);
    }
    let t = x + LANCZOS_G - 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x - 0.5) * t.ln() - t + sum.ln()
}

/// Digamma (psi) function for `x > 0`.
///
/// Upward recurrence to `x >= 10`, then the Bernoulli asymptotic series.
pub fn digamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "digamma requires a positive argument");
    let mut result = 0.0;
    let mut z = x;
    while z < 10.0 {
        result -= 1.0 / z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    // B_2/2 z^2, B_4/4 z^4, ... up to z^-14.
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2
                                        * (1.0 / 132.0
                                            - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    result + z.ln() - 0.5 * inv - series
}
