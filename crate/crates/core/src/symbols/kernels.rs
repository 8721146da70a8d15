//! Exact propagator symbols of the mode equation `w'' + 2 mu r^4 w' + (r^2 + r^4) w = 0`.
//!
//! `K0` and `K1` are the solutions with data `(1, 0)` and `(0, 1)`. Both are real; they
//! are evaluated through `sinc`-type divided differences so the formulas stay accurate
//! across the degenerate circle where the two roots merge.

use super::roots::{char_roots, ModelParams, Regime};

/// `sin(x) / x`, accurate near zero.
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `(1 - e^{-x}) / x` for `x >= 0`, accurate near zero.
fn one_minus_exp_ratio(x: f64) -> f64 {
    if x < 1e-8 {
        1.0 - 0.5 * x
    } else {
        -(-x).exp_m1() / x
    }
}

/// Confluent divided differences: `(cosh(h t), sinh(h t) / h)` with `h^2 = disc`, as
/// power series in `z = disc t^2`; used when `|z| < 1`.
fn confluent(disc: f64, t: f64) -> (f64, f64) {
    let z = disc * t * t;
    let (mut c, mut s) = (0.0, 0.0);
    let mut term_c = 1.0; // z^k / (2k)!
    let mut term_s = 1.0; // z^k / (2k+1)!
    for k in 0..30 {
        c += term_c;
        s += term_s;
        let kf = k as f64;
        term_c *= z / ((2.0 * kf + 1.0) * (2.0 * kf + 2.0));
        term_s *= z / ((2.0 * kf + 2.0) * (2.0 * kf + 3.0));
        if term_c.abs() < 1e-18 && term_s.abs() < 1e-18 {
            break;
        }
    }
    (c, t * s)
}

/// `(K0(t, r), K1(t, r))`.
pub fn kernels(t: f64, r: f64, params: &ModelParams) -> (f64, f64) {
    debug_assert!(t >= 0.0);
    let roots = char_roots(r, params);
    if r == 0.0 {
        return (1.0, t);
    }
    let disc = roots.discriminant;
    let near_confluence = roots.regime == Regime::Degenerate || (disc * t * t).abs() < 1.0;
    if near_confluence {
        let mean = -params.mu() * r.powi(4);
        let decay = (mean * t).exp();
        let (ch, sh_over_h) = confluent(disc, t);
        return (decay * (ch - mean * sh_over_h), decay * sh_over_h);
    }
    match roots.regime {
        Regime::Oscillatory | Regime::Degenerate => {
            let lr = roots.lambda_plus.re;
            let omega = (-disc).sqrt();
            let decay = (lr * t).exp();
            let s = t * sinc(omega * t);
            (decay * ((omega * t).cos() - lr * s), decay * s)
        }
        Regime::Overdamped => {
            let slow = roots.lambda_plus.re;
            let gap = roots.lambda_plus.re - roots.lambda_minus.re;
            let decay = (slow * t).exp();
            let phi = t * one_minus_exp_ratio(gap * t);
            (decay * (1.0 - slow * phi), decay * phi)
        }
    }
}

pub fn kernel_k0_hat(t: f64, r: f64, params: &ModelParams) -> f64 {
    kernels(t, r, params).0
}

pub fn kernel_k1_hat(t: f64, r: f64, params: &ModelParams) -> f64 {
    kernels(t, r, params).1
}

/// Time derivatives `(dK0/dt, dK1/dt)` from the mode equation.
pub fn kernel_derivatives(t: f64, r: f64, params: &ModelParams) -> (f64, f64) {
    let (k0, k1) = kernels(t, r, params);
    let a = params.damping(r);
    let b = ModelParams::stiffness(r);
    (-b * k1, k0 - a * k1)
}

/// Per-mode coefficients for one exact-flow step of length `dt` with a forcing that is
/// linear in time over the step.
///
/// For forcing `g(sigma) = g0 + (g1 - g0) sigma / dt` the Duhamel increment is
/// `g0 * w0 + (g1 - g0) * w1` for the value and `g0 * k1 + (g1 - g0) * w0 / dt` for
/// the time derivative.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StepCoefficients {
    pub k0: f64,
    pub k1: f64,
    pub dk0: f64,
    pub dk1: f64,
    /// `int_0^dt K1(tau) dtau`
    pub w0: f64,
    /// `(1/dt) int_0^dt (dt - tau) K1(tau) dtau`
    pub w1: f64,
}

pub fn step_coefficients(dt: f64, r: f64, params: &ModelParams) -> StepCoefficients {
    let (k0, k1) = kernels(dt, r, params);
    let a = params.damping(r);
    let b = ModelParams::stiffness(r);
    let (dk0, dk1) = (-b * k1, k0 - a * k1);
    let scale = (a + b.sqrt()) * dt;
    let (w0, q) = if scale < 0.5 {
        // Taylor series from K1^{(k)}(0): 0, 1, -a, a^2 - b, ...
        let (mut d_prev, mut d) = (0.0, 1.0);
        let mut pow = dt * dt / 2.0; // dt^{k+1}/(k+1)! for k = 1
        let mut pow_q = dt * dt * dt / 6.0; // dt^{k+2}/(k+2)!
        let (mut w0, mut q) = (0.0, 0.0);
        for k in 1..40 {
            w0 += d * pow;
            q += d * pow_q;
            let next = -a * d - b * d_prev;
            d_prev = d;
            d = next;
            let kf = k as f64;
            pow *= dt / (kf + 2.0);
            pow_q *= dt / (kf + 3.0);
            if (d * pow).abs() < 1e-19 * w0.abs() {
                break;
            }
        }
        (w0, q)
    } else {
        // K0' = -b K1 and K1' = K0 - a K1, integrated once and twice
        let w0 = (1.0 - k0) / b;
        (w0, (dt - k1 - a * w0) / b)
    };
    StepCoefficients { k0, k1, dk0, dk1, w0, w1: q / dt }
}
