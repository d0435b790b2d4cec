//! Gaussian wave-packet dynamics in the Morse trap.
//!
//! The packet keeps its Gaussian shape; its center `x0(t)` and squared
//! width `s(t) = Delta^2(t)` obey
//!
//! `x0'' = 2 [exp(-(2 x0 - s)) - exp(-(x0 - s/4))]`
//! `s''  = 2/(K^2 s) + gamma/sqrt(s) + 4 s [exp(-(x0 - s/4))/2 - exp(-(2 x0 - s))]`
//!
//! written here as a first-order system in `(x0, v, s, w)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{initial_energy, ScaledParams};
use crate::util::fmt_sig15;

/// Squared-width floor; reaching it aborts the run as a collapse instead
/// of being clamped, since for attractive coupling collapse is physical.
pub const WIDTH_FLOOR: f64 = 1e-8;

/// Collective coordinates of the Gaussian packet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PacketState {
    /// Packet center.
    pub x0: f64,
    /// Center velocity.
    pub v: f64,
    /// Squared width `Delta^2` (> 0).
    pub s: f64,
    /// `d(Delta^2)/dt`.
    pub w: f64,
}

impl PacketState {
    /// Standard release: centered at the potential minimum with zero
    /// initial width velocity.
    pub fn initial(p0: f64, delta0: f64) -> Self {
        Self { x0: 0.0, v: p0, s: delta0 * delta0, w: 0.0 }
    }

    pub fn delta(&self) -> f64 {
        self.s.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum IntegratorMode {
    /// Classical RK4 with a fixed step.
    FixedRk4,
    /// Embedded Cash-Karp 4(5) with step-size control, for the stiff
    /// left-wall bounces.
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegratorSettings {
    pub mode: IntegratorMode,
    /// Fixed step (also the initial step of the adaptive mode).
    pub dt: f64,
    pub rtol: f64,
    pub atol: f64,
    /// Spacing of stored samples.
    pub sample_interval: f64,
    pub s_min: f64,
    /// Optional early stop once `x0 > stop_x` with positive velocity.
    pub stop_x: Option<f64>,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        Self {
            mode: IntegratorMode::FixedRk4,
            dt: 1e-3,
            rtol: 1e-8,
            atol: 1e-10,
            sample_interval: 1e-2,
            s_min: WIDTH_FLOOR,
            stop_x: None,
        }
    }
}

/// Time series of packet states.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PacketState>,
    pub k: f64,
    pub gamma: f64,
    pub settings: IntegratorSettings,
    /// Requested horizon; the run may stop earlier on an escape event.
    pub t_max: f64,
}

impl Trajectory {
    pub fn last(&self) -> &PacketState {
        self.states.last().expect("trajectory is never empty")
    }

    /// CSV body with columns `t, x0, v, delta, w` at 15 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x0,v,delta,w\n");
        for (t, st) in self.times.iter().zip(&self.states) {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_sig15(*t),
                fmt_sig15(st.x0),
                fmt_sig15(st.v),
                fmt_sig15(st.delta()),
                fmt_sig15(st.w),
            ));
        }
        out
    }
}

/// Right-hand side of the first-order system.
pub fn rhs(state: &PacketState, k: f64, gamma: f64) -> Result<[f64; 4]> {
    if state.s <= WIDTH_FLOOR {
        return Err(Error::WidthCollapse { t: f64::NAN, s_min: WIDTH_FLOOR });
    }
    let s = state.s;
    // Shifted Gaussian expectations <exp(-2x)> and <exp(-x)>.
    let e2 = (-(2.0 * state.x0 - s)).exp();
    let e1 = (-(state.x0 - s / 4.0)).exp();
    let dv = 2.0 * (e2 - e1);
    let dw = 2.0 / (k * k * s) + gamma / s.sqrt() + 4.0 * s * (0.5 * e1 - e2);
    Ok([state.v, dv, state.w, dw])
}

fn add_scaled(y: &PacketState, d: &[f64; 4], h: f64) -> PacketState {
    PacketState {
        x0: y.x0 + h * d[0],
        v: y.v + h * d[1],
        s: y.s + h * d[2],
        w: y.w + h * d[3],
    }
}

fn rk4_step(y: &PacketState, k: f64, gamma: f64, h: f64) -> Result<PacketState> {
    let k1 = rhs(y, k, gamma)?;
    let k2 = rhs(&add_scaled(y, &k1, h / 2.0), k, gamma)?;
    let k3 = rhs(&add_scaled(y, &k2, h / 2.0), k, gamma)?;
    let k4 = rhs(&add_scaled(y, &k3, h), k, gamma)?;
    Ok(PacketState {
        x0: y.x0 + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        v: y.v + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        s: y.s + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        w: y.w + h / 6.0 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3]),
    })
}

// Cash-Karp tableau.
const CK_A: [[f64; 5]; 5] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
    [3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0.0, 0.0],
    [-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0.0],
    [
        1631.0 / 55296.0,
        175.0 / 512.0,
        575.0 / 13824.0,
        44275.0 / 110592.0,
        253.0 / 4096.0,
    ],
];
const CK_B5: [f64; 6] = [
    37.0 / 378.0,
    0.0,
    250.0 / 621.0,
    125.0 / 594.0,
    0.0,
    512.0 / 1771.0,
];
const CK_B4: [f64; 6] = [
    2825.0 / 27648.0,
    0.0,
    18575.0 / 48384.0,
    13525.0 / 55296.0,
    277.0 / 14336.0,
    1.0 / 4.0,
];

fn cash_karp_step(
    y: &PacketState,
    k: f64,
    gamma: f64,
    h: f64,
) -> Result<(PacketState, f64)> {
    let mut ks = [[0.0; 4]; 6];
    ks[0] = rhs(y, k, gamma)?;
    for stage in 1..6 {
        let mut trial = *y;
        for (j, a) in CK_A[stage - 1].iter().enumerate().take(stage) {
            trial = add_scaled(&trial, &ks[j], h * a);
        }
        ks[stage] = rhs(&trial, k, gamma)?;
    }
    let mut y5 = [y.x0, y.v, y.s, y.w];
    let mut y4 = y5;
    for stage in 0..6 {
        for c in 0..4 {
            y5[c] += h * CK_B5[stage] * ks[stage][c];
            y4[c] += h * CK_B4[stage] * ks[stage][c];
        }
    }
    let next = PacketState { x0: y5[0], v: y5[1], s: y5[2], w: y5[3] };
    let mut err: f64 = 0.0;
    for c in 0..4 {
        err = err.max((y5[c] - y4[c]).abs());
    }
    Ok((next, err))
}

/// Integrates the packet ODEs from `t = 0` to `t_max`, or until the
/// optional escape stop or an integrator error.
pub fn integrate(
    init: PacketState,
    k: f64,
    gamma: f64,
    t_max: f64,
    settings: &IntegratorSettings,
) -> Result<Trajectory> {
    if !(t_max > 0.0) {
        return Err(Error::InvalidParameter(format!("t_max must be positive, got {t_max}")));
    }
    if !(init.s > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "initial squared width must be positive, got {}",
            init.s
        )));
    }
    match settings.mode {
        IntegratorMode::FixedRk4 => integrate_fixed(init, k, gamma, t_max, settings),
        IntegratorMode::Adaptive => integrate_adaptive(init, k, gamma, t_max, settings),
    }
}

fn stop_reached(state: &PacketState, settings: &IntegratorSettings) -> bool {
    matches!(settings.stop_x, Some(x) if state.x0 > x && state.v > 0.0)
}

fn check_width(state: &PacketState, t: f64, settings: &IntegratorSettings) -> Result<()> {
    if state.s <= settings.s_min {
        Err(Error::WidthCollapse { t, s_min: settings.s_min })
    } else {
        Ok(())
    }
}

fn integrate_fixed(
    init: PacketState,
    k: f64,
    gamma: f64,
    t_max: f64,
    settings: &IntegratorSettings,
) -> Result<Trajectory> {
    let dt = settings.dt;
    let stride = (settings.sample_interval / dt).round().max(1.0) as usize;
    let n_steps = (t_max / dt).ceil() as usize;

    let mut times = Vec::with_capacity(n_steps / stride + 2);
    let mut states = Vec::with_capacity(n_steps / stride + 2);
    let mut y = init;
    times.push(0.0);
    states.push(y);
    for step in 1..=n_steps {
        let t = step as f64 * dt;
        y = rk4_step(&y, k, gamma, dt).map_err(|e| attach_time(e, t))?;
        check_width(&y, t, settings)?;
        if step % stride == 0 || step == n_steps || stop_reached(&y, settings) {
            times.push(t);
            states.push(y);
        }
        if stop_reached(&y, settings) {
            break;
        }
    }
    Ok(Trajectory { times, states, k, gamma, settings: *settings, t_max })
}

fn integrate_adaptive(
    init: PacketState,
    k: f64,
    gamma: f64,
    t_max: f64,
    settings: &IntegratorSettings,
) -> Result<Trajectory> {
    const H_MIN: f64 = 1e-12;
    const SAFETY: f64 = 0.9;

    let mut t = 0.0;
    let mut h = settings.dt.min(settings.sample_interval);
    let mut y = init;
    let mut times = vec![0.0];
    let mut states = vec![y];
    let mut next_sample = settings.sample_interval;

    // Set while retries are driven by the width floor, so an eventual
    // step underflow is reported as the collapse it is.
    let mut width_limited = false;

    while t < t_max {
        if h < H_MIN {
            return Err(if width_limited {
                Error::WidthCollapse { t, s_min: settings.s_min }
            } else {
                Error::StepUnderflow { t }
            });
        }
        h = h.min(t_max - t).min(settings.sample_interval);
        // A trial stage touching the width floor usually means the step is
        // too large for the quantum-pressure bounce; retry smaller before
        // concluding the width truly collapsed.
        let (candidate, err) = match cash_karp_step(&y, k, gamma, h) {
            Ok(pair) => pair,
            Err(Error::WidthCollapse { .. }) => {
                width_limited = true;
                h *= 0.5;
                continue;
            }
            Err(e) => return Err(attach_time(e, t)),
        };
        let scale = settings.atol
            + settings.rtol
                * candidate
                    .x0
                    .abs()
                    .max(candidate.v.abs())
                    .max(candidate.s.abs())
                    .max(candidate.w.abs());
        if err <= scale && candidate.s > settings.s_min {
            width_limited = false;
            t += h;
            y = candidate;
            check_width(&y, t, settings)?;
            if t + 1e-12 >= next_sample || t >= t_max || stop_reached(&y, settings) {
                times.push(t);
                states.push(y);
                next_sample += settings.sample_interval;
            }
            if stop_reached(&y, settings) {
                break;
            }
            let grow = if err > 0.0 {
                SAFETY * (scale / err).powf(0.2)
            } else {
                5.0
            };
            h *= grow.min(5.0);
        } else if candidate.s <= settings.s_min {
            width_limited = true;
            h *= 0.5;
        } else {
            h *= (SAFETY * (scale / err).powf(0.25)).max(0.1);
        }
    }
    Ok(Trajectory { times, states, k, gamma, settings: *settings, t_max })
}

fn attach_time(e: Error, t: f64) -> Error {
    match e {
        Error::WidthCollapse { s_min, .. } => Error::WidthCollapse { t, s_min },
        other => other,
    }
}

/// Trapped/escaped verdict for a completed trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Classification {
    Trapped { reflections: usize },
    Escaped { t_escape: f64 },
}

/// Classifies a trajectory: escaped once the center passes `x_esc` moving
/// right, trapped otherwise with the number of reflections (velocity sign
/// changes, with hysteresis against double counts at sharp bounces).
pub fn classify(traj: &Trajectory, x_esc: f64, t_max: f64) -> Result<Classification> {
    if traj.states.len() < 2 {
        return Err(Error::Indeterminate("trajectory too short to classify".into()));
    }
    for (t, st) in traj.times.iter().zip(&traj.states) {
        if st.x0 > x_esc && st.v > 0.0 {
            return Ok(Classification::Escaped { t_escape: *t });
        }
    }
    let t_end = *traj.times.last().unwrap();
    if t_end + traj.settings.sample_interval < t_max {
        return Err(Error::Indeterminate(format!(
            "trajectory ended at t = {t_end} before t_max = {t_max}"
        )));
    }
    // Count sign changes of v, ignoring changes within 10 samples of the
    // previous one.
    let mut reflections = 0usize;
    let mut last_change: Option<usize> = None;
    let mut prev_sign = 0i8;
    for (i, st) in traj.states.iter().enumerate() {
        let sign = if st.v > 0.0 {
            1
        } else if st.v < 0.0 {
            -1
        } else {
            0
        };
        if sign != 0 {
            if prev_sign != 0 && sign != prev_sign {
                let far_enough = match last_change {
                    Some(j) => i - j > 10,
                    None => true,
                };
                if far_enough {
                    reflections += 1;
                    last_change = Some(i);
                }
            }
            prev_sign = sign;
        }
    }
    Ok(Classification::Trapped { reflections })
}

/// Classical escape momentum from the potential minimum: `sqrt(2)`.
pub fn classical_threshold(_k: f64) -> f64 {
    std::f64::consts::SQRT_2
}

/// Classical escape momentum from a general start inside the well.
pub fn classical_escape_momentum(x: f64) -> f64 {
    (-2.0 * crate::model::morse_potential(x)).max(0.0).sqrt()
}

/// Search configuration for [`threshold_momentum_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdSettings {
    pub p_max: f64,
    pub x_esc: f64,
    pub t_max: f64,
    pub integrator: IntegratorSettings,
}

impl Default for ThresholdSettings {
    fn default() -> Self {
        Self {
            p_max: 3.0,
            x_esc: 15.0,
            t_max: 200.0,
            // Deep width dips near the threshold are stiff; the adaptive
            // stepper resolves the quantum-pressure bounce that a fixed
            // step can punch through.
            integrator: IntegratorSettings {
                mode: IntegratorMode::Adaptive,
                ..IntegratorSettings::default()
            },
        }
    }
}

/// Threshold momentum and energy with the final bisection bracket.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThresholdResult {
    pub p_th: f64,
    /// Initial mean energy at `p_th`, in units of `D`.
    pub e_th: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub evaluations: usize,
}

fn probe_escapes(
    p0: f64,
    k: f64,
    gamma: f64,
    delta0: f64,
    settings: &ThresholdSettings,
) -> Result<bool> {
    let mut integ = settings.integrator;
    integ.stop_x = Some(settings.x_esc);
    // A probe whose width collapses never left the trap; for bracketing it
    // sits on the trapped side rather than poisoning the whole search.
    let traj = match integrate(PacketState::initial(p0, delta0), k, gamma, settings.t_max, &integ)
    {
        Ok(traj) => traj,
        Err(Error::WidthCollapse { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(matches!(
        classify(&traj, settings.x_esc, settings.t_max)?,
        Classification::Escaped { .. }
    ))
}

/// Bisects the initial momentum between trapped and escaped runs.
pub fn threshold_momentum(k: f64, gamma: f64, delta0: f64, tol: f64) -> Result<ThresholdResult> {
    threshold_momentum_with(k, gamma, delta0, tol, &ThresholdSettings::default())
}

pub fn threshold_momentum_with(
    k: f64,
    gamma: f64,
    delta0: f64,
    tol: f64,
    settings: &ThresholdSettings,
) -> Result<ThresholdResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    let mut evaluations = 0usize;
    let mut escapes = |p0: f64| -> Result<bool> {
        evaluations += 1;
        probe_escapes(p0, k, gamma, delta0, settings)
    };
    if escapes(0.0)? {
        return Err(Error::NoThreshold);
    }
    if !escapes(settings.p_max)? {
        return Err(Error::Indeterminate(format!(
            "packet still trapped at p0 = {}",
            settings.p_max
        )));
    }
    let mut lo = 0.0;
    let mut hi = settings.p_max;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if escapes(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let p_th = 0.5 * (lo + hi);
    let sp = ScaledParams::new(k, gamma, delta0, p_th)?;
    Ok(ThresholdResult {
        p_th,
        e_th: initial_energy(&sp)?,
        bracket_lo: lo,
        bracket_hi: hi,
        evaluations,
    })
}

/// One cell of the threshold-energy table.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRow {
    pub k: f64,
    pub gamma: f64,
    pub p_th: Option<f64>,
    pub e_th: Option<f64>,
    pub status: String,
}

/// Threshold energies over a `(K, gamma)` grid; cells without a threshold
/// are marked rather than failing the whole sweep.
pub fn threshold_energy_table(
    k_values: &[f64],
    gamma_values: &[f64],
    delta0: f64,
    tol: f64,
) -> Vec<ThresholdRow> {
    let cells: Vec<(f64, f64)> = k_values
        .iter()
        .flat_map(|&k| gamma_values.iter().map(move |&g| (k, g)))
        .collect();
    cells
        .par_iter()
        .map(|&(k, gamma)| match threshold_momentum(k, gamma, delta0, 1e-3_f64.min(tol)) {
            Ok(r) => ThresholdRow {
                k,
                gamma,
                p_th: Some(r.p_th),
                e_th: Some(r.e_th),
                status: "ok".into(),
            },
            Err(Error::NoThreshold) => ThresholdRow {
                k,
                gamma,
                p_th: None,
                e_th: None,
                status: "no-threshold".into(),
            },
            Err(e) => ThresholdRow { k, gamma, p_th: None, e_th: None, status: e.to_string() },
        })
        .collect()
}

/// Qualitative verdict on the width history of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum WidthBehavior {
    Growing,
    BoundedOscillatory { min: f64, max: f64 },
    ShapeInvariant { relative_variation: f64 },
}

const SHAPE_INVARIANT_BAND: f64 = 0.10;
const GROWTH_FACTOR: f64 = 2.0;

/// Classifies the width history: shape-invariant when the width never
/// leaves a 10% band around its initial value, growing when it has at
/// least doubled and keeps rising over the last quartile, bounded
/// oscillatory otherwise.
pub fn width_behavior(traj: &Trajectory) -> Result<WidthBehavior> {
    if traj.states.len() < 16 {
        return Err(Error::Indeterminate("trajectory too short for a width verdict".into()));
    }
    let deltas: Vec<f64> = traj.states.iter().map(PacketState::delta).collect();
    let d0 = deltas[0];
    // Relative variation is the oscillation half-range over the time mean,
    // so a packet breathing a few percent about a drifted mean still counts
    // as shape invariant.
    let lo = deltas.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = deltas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = deltas.iter().sum::<f64>() / deltas.len() as f64;
    let rel_var = (hi - lo) / (2.0 * mean);
    if rel_var < SHAPE_INVARIANT_BAND {
        return Ok(WidthBehavior::ShapeInvariant { relative_variation: rel_var });
    }
    let last = *deltas.last().unwrap();
    let q = deltas.len() * 3 / 4;
    let tail = &deltas[q..];
    let tail_monotone = tail.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-3));
    if last / d0 > GROWTH_FACTOR && tail_monotone {
        return Ok(WidthBehavior::Growing);
    }
    Ok(WidthBehavior::BoundedOscillatory { min: lo, max: hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhs_direct_substitution() {
        // x0 = 0, Delta = 0.4, K = 2, gamma = 0.5.
        let st = PacketState { x0: 0.0, v: 0.0, s: 0.16, w: 0.0 };
        let d = rhs(&st, 2.0, 0.5).unwrap();
        let dv = 2.0 * ((0.16f64).exp() - (0.04f64).exp());
        let dw = 0.5 / 0.16 + 0.5 / 0.4
            + 4.0 * 0.16 * (0.5 * (0.04f64).exp() - (0.16f64).exp());
        assert!((d[1] - dv).abs() < 1e-14);
        assert!((d[3] - dw).abs() < 1e-14);
    }

    #[test]
    fn rhs_far_field_free_spreading() {
        let st = PacketState { x0: 80.0, v: 1.0, s: 0.25, w: 0.0 };
        let d = rhs(&st, 2.0, 0.0).unwrap();
        assert!(d[1].abs() < 1e-30);
        assert!((d[3] - 2.0 / (4.0 * 0.25)).abs() < 1e-12);
    }

    #[test]
    fn rhs_zero_force_for_point_packet_at_minimum() {
        let st = PacketState { x0: 0.0, v: 0.0, s: 1e-6, w: 0.0 };
        let d = rhs(&st, 2.0, 0.0).unwrap();
        assert!(d[1].abs() < 1e-5);
    }

    #[test]
    fn rhs_width_collapse_guard() {
        let st = PacketState { x0: 0.0, v: 0.0, s: 1e-9, w: 0.0 };
        assert!(matches!(rhs(&st, 2.0, -0.5), Err(Error::WidthCollapse { .. })));
    }

    #[test]
    fn classical_threshold_consistency() {
        assert!((classical_threshold(2.0) - 1.41421356).abs() < 1e-8);
        assert!((classical_escape_momentum(0.0) - classical_threshold(2.0)).abs() < 1e-14);
    }

    #[test]
    fn fixed_and_adaptive_agree() {
        let init = PacketState::initial(0.2, 0.4);
        let fixed = integrate(init, 2.0, 0.5, 5.0, &IntegratorSettings::default()).unwrap();
        let adaptive_settings = IntegratorSettings {
            mode: IntegratorMode::Adaptive,
            ..IntegratorSettings::default()
        };
        let adaptive = integrate(init, 2.0, 0.5, 5.0, &adaptive_settings).unwrap();
        let f = fixed.last();
        let a = adaptive.last();
        assert!((f.x0 - a.x0).abs() < 1e-5);
        assert!((f.s - a.s).abs() < 1e-5);
    }

    #[test]
    fn escape_stop_truncates_run() {
        let settings = IntegratorSettings { stop_x: Some(15.0), ..Default::default() };
        let traj = integrate(PacketState::initial(1.0, 0.4), 2.0, 0.5, 200.0, &settings).unwrap();
        assert!(*traj.times.last().unwrap() < 200.0);
        assert!(matches!(
            classify(&traj, 15.0, 200.0).unwrap(),
            Classification::Escaped { .. }
        ));
    }

    #[test]
    fn trapped_run_counts_reflections() {
        let traj =
            integrate(PacketState::initial(0.2, 0.4), 2.0, 0.5, 30.0, &Default::default())
                .unwrap();
        match classify(&traj, 15.0, 30.0).unwrap() {
            Classification::Trapped { reflections } => assert!(reflections >= 2),
            other => panic!("expected trapped, got {other:?}"),
        }
    }

    #[test]
    fn table_marks_no_threshold_cells() {
        let rows = threshold_energy_table(&[2.0], &[1.2], 0.4, 1e-2);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].status, "no-threshold");
        assert!(rows[0].p_th.is_none());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let traj =
            integrate(PacketState::initial(0.2, 0.4), 2.0, 0.0, 1.0, &Default::default())
                .unwrap();
        let csv = traj.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,x0,v,delta,w");
        assert!(lines.count() >= 100);
    }
}
