//! Shared helpers for the integration suites.

/// Composite Simpson quadrature of `f` over `[a, b]` with `n` panels
/// (`n` even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n >= 2 && n % 2 == 0, "simpson needs an even panel count");
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

// Not every suite uses every helper; the module is compiled per test binary.
#[allow(dead_code)]
/// Normalized Gaussian density of the packet ansatz,
/// `|psi|^2 = exp(-(x-x0)^2/delta^2) / (sqrt(pi) delta)`.
pub fn ansatz_density(x: f64, x0: f64, delta: f64) -> f64 {
    (-(x - x0) * (x - x0) / (delta * delta)).exp() / (std::f64::consts::PI.sqrt() * delta)
}
