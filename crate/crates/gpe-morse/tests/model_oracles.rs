//! Closed-form model pieces checked against direct quadrature and
//! property-based invariants.

mod common;

use common::{ansatz_density, simpson};
use gpe_morse::model::{
    gamma_to_lambda, gaussian_exp_moment, initial_energy, lambda_to_gamma, morse_potential,
    quartic_norm, MorseParams, ScaledParams, SQRT_TWO_PI,
};
use proptest::prelude::*;

#[test]
fn exp_moments_match_quadrature() {
    for &x0 in &[-2.0, -0.5, 0.0, 0.7, 3.0, 10.0] {
        for &delta in &[0.1, 0.4, 1.0, 2.0] {
            for k in 1u32..=2 {
                let exact = gaussian_exp_moment(x0, delta, k).unwrap();
                let lo = x0 - 14.0 * delta - 14.0 * delta * k as f64;
                let hi = x0 + 14.0 * delta;
                let numeric = simpson(
                    |x| (-(k as f64) * x).exp() * ansatz_density(x, x0, delta),
                    lo,
                    hi,
                    20_000,
                );
                let rel = (exact - numeric).abs() / exact.abs();
                assert!(
                    rel < 1e-10,
                    "exp moment mismatch at x0={x0} delta={delta} k={k}: rel {rel:.3e}"
                );
            }
        }
    }
}

#[test]
fn quartic_norm_matches_quadrature() {
    for &delta in &[0.1, 0.4, 1.0, 2.0] {
        let exact = quartic_norm(delta).unwrap();
        let numeric = simpson(
            |x| ansatz_density(x, 0.3, delta).powi(2),
            0.3 - 12.0 * delta,
            0.3 + 12.0 * delta,
            20_000,
        );
        let rel = (exact - numeric).abs() / exact;
        assert!(rel < 1e-10, "quartic mismatch at delta={delta}: rel {rel:.3e}");
    }
}

#[test]
fn initial_energy_matches_quadrature_assembly() {
    // Assembly from first principles: width, kinetic, potential
    // expectation by quadrature, and the gamma/Delta interaction term.
    let k = 2.0;
    let gamma = -0.5;
    let delta0 = 0.4;
    let p0 = 1.35;
    let sp = ScaledParams::new(k, gamma, delta0, p0).unwrap();
    let pot = simpson(
        |x| morse_potential(x) * ansatz_density(x, 0.0, delta0),
        -5.0,
        6.0,
        40_000,
    );
    let assembled = 1.0 / (2.0 * k * k * delta0) + 0.5 * p0 * p0 + pot + gamma / delta0;
    let direct = initial_energy(&sp).unwrap();
    assert!((assembled - direct).abs() < 1e-9, "assembled {assembled} vs {direct}");
}

#[test]
fn morse_shape() {
    assert!((morse_potential(0.0) + 1.0).abs() < 1e-15);
    assert!(morse_potential(50.0).abs() < 1e-20);
    assert!(morse_potential(-30.0).is_infinite() || morse_potential(-30.0) > 1e20);
    // Minimum at the origin.
    assert!(morse_potential(0.01) > -1.0);
    assert!(morse_potential(-0.01) > -1.0);
}

#[test]
fn physical_to_dimensionless_round_trip() {
    let p = MorseParams::new(2.0, 0.7, 1.3, 1.1).unwrap();
    let k = p.k();
    assert!((k - (2.0f64 * 1.3 * 2.0).sqrt() / (1.1 * 0.7)).abs() < 1e-14);
}

proptest! {
    #[test]
    fn lambda_gamma_involution(gamma in -10.0f64..10.0, k in 0.6f64..50.0) {
        let lambda = gamma_to_lambda(gamma, k);
        prop_assert!((lambda_to_gamma(lambda, k) - gamma).abs() <= 1e-12 * gamma.abs().max(1.0));
        // Defining relation: lambda = sqrt(2 pi) gamma K^2 / 2.
        prop_assert!((lambda - SQRT_TWO_PI * gamma * k * k / 2.0).abs()
            <= 1e-12 * lambda.abs().max(1.0));
    }

    #[test]
    fn quartic_norm_scaling(delta in 0.01f64..50.0, c in 0.1f64..10.0) {
        // int |psi|^4 scales as 1/delta.
        let a = quartic_norm(delta).unwrap();
        let b = quartic_norm(c * delta).unwrap();
        prop_assert!((a / b - c).abs() < 1e-10 * c);
    }

    #[test]
    fn morse_bounded_below(x in -700.0f64..700.0) {
        prop_assert!(morse_potential(x) >= -1.0);
    }

    #[test]
    fn exp_moment_exceeds_point_value_from_convexity(
        x0 in -2.0f64..10.0,
        delta in 0.05f64..2.0,
    ) {
        // Jensen: <e^{-kx}> >= e^{-k x0}.
        for k in 1u32..=2 {
            let m = gaussian_exp_moment(x0, delta, k).unwrap();
            prop_assert!(m >= (-(k as f64) * x0).exp());
        }
    }
}
