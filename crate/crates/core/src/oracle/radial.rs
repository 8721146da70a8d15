//! Whole-space norms of radial Fourier multipliers by one-dimensional quadrature in
//! polar coordinates.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::quadrature::{integrate_panels, Quadrature};
use crate::error::{invalid, Result};
use crate::symbols::{profile_g0_hat, profile_g1_hat, profile_phase, ModelParams};

pub const RADIAL_REL_TOL: f64 = 1e-6;

/// Profile symbols whose whole-space norms the oracle evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MultiplierSymbol {
    /// `G0`
    G0,
    /// `G1`
    G1,
    /// `|xi| G1`, the modulus of the gradient symbol
    DG1,
    /// `|xi|^4 G0`
    BilapG0,
}

impl MultiplierSymbol {
    pub fn evaluate(&self, t: f64, r: f64, params: &ModelParams) -> f64 {
        match self {
            MultiplierSymbol::G0 => profile_g0_hat(t, r, params),
            MultiplierSymbol::G1 => profile_g1_hat(t, r, params),
            MultiplierSymbol::DG1 => r * profile_g1_hat(t, r, params),
            MultiplierSymbol::BilapG0 => r.powi(4) * profile_g0_hat(t, r, params),
        }
    }

    /// Extra powers of `r` carried by the symbol beyond `G0`/`G1`.
    fn degree(&self) -> f64 {
        match self {
            MultiplierSymbol::G0 | MultiplierSymbol::G1 => 0.0,
            MultiplierSymbol::DG1 => 1.0,
            MultiplierSymbol::BilapG0 => 4.0,
        }
    }
}

/// Surface area of the unit sphere in `R^n`, `n` in 1..=3.
pub fn sphere_area(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => 2.0 * PI.powf(n as f64 / 2.0) / statrs::function::gamma::gamma(n as f64 / 2.0),
    }
}

/// Smallest `rho` with `rho^4 - power ln rho >= 69.08`, so that `rho^power e^{-rho^4}` has
/// fallen below `1e-30` of its scale.
pub(crate) fn gaussian_cutoff(power: f64) -> f64 {
    let target = 30.0 * std::f64::consts::LN_10;
    let mut rho = target.powf(0.25);
    for _ in 0..50 {
        rho = (target + power.max(0.0) * rho.ln().max(0.0)).powf(0.25);
    }
    rho
}

/// Panel breakpoints on `[0, r_max]` no wider than a quarter period of a phase with
/// derivative `phase_rate(r)` (assumed non-decreasing).
pub(crate) fn phase_panels(r_max: f64, phase_rate: impl Fn(f64) -> f64) -> Vec<f64> {
    let quarter = |r: f64| 0.5 * PI / phase_rate(r).max(1e-300);
    let mut breaks = vec![0.0];
    let mut r = 0.0;
    while r < r_max {
        let guess = r + quarter(r);
        let step = quarter(guess.min(r_max)).min(quarter(r));
        r = (r + step).min(r_max);
        breaks.push(r);
    }
    breaks
}

/// `(|S^{n-1}| (2pi)^{-n} int_0^{r_max} r^{2s+n-1} |symbol(r)|^2 dr)^{1/2}` on the given
/// panels.
pub fn radial_norm<F: Fn(f64) -> f64>(symbol: F, s: f64, n: usize, breaks: &[f64], rel_tol: f64) -> Result<Quadrature> {
    if !(1..=3).contains(&n) {
        return Err(invalid(format!("dimension must be 1, 2 or 3 (got {n})")));
    }
    let power = 2.0 * s + n as f64 - 1.0;
    if power < 0.0 {
        return Err(invalid("radial weight r^{2s+n-1} must be integrable"));
    }
    let integrand = |r: f64| {
        let v = symbol(r);
        if power == 0.0 {
            v * v
        } else {
            r.powf(power) * v * v
        }
    };
    let q = integrate_panels(integrand, breaks, rel_tol, 0.0, 200_000)?;
    let scale = sphere_area(n) / (2.0 * PI).powi(n as i32);
    let value = (scale * q.value.max(0.0)).sqrt();
    // first-order propagation of the integral error through the square root
    let error = if value > 0.0 { 0.5 * scale * q.error / value } else { (scale * q.error).sqrt() };
    Ok(Quadrature { value, error, evaluations: q.evaluations })
}

/// `||symbol(t, D)||` in `Hdot^s(R^n)` with panels resolving the phase `r t + r^3 t / 2`.
pub fn multiplier_norm_radial_detailed(
    symbol: MultiplierSymbol,
    s: f64,
    n: usize,
    t: f64,
    params: &ModelParams,
    rel_tol: f64,
) -> Result<Quadrature> {
    if !(t > 0.0) {
        return Err(invalid("time must be positive"));
    }
    if s < 0.0 {
        return Err(invalid("Sobolev index must be non-negative"));
    }
    let power = 2.0 * (s + symbol.degree()) + n as f64 - 1.0;
    let r_max = gaussian_cutoff(power / 4.0) / (2.0 * params.mu() * t).powf(0.25);
    let breaks = phase_panels(r_max, |r| t * (1.0 + 1.5 * r * r));
    debug_assert!(profile_phase(t, r_max).is_finite());
    radial_norm(|r| symbol.evaluate(t, r, params), s, n, &breaks, rel_tol)
}

pub fn multiplier_norm_radial(symbol: MultiplierSymbol, s: f64, n: usize, t: f64, params: &ModelParams) -> Result<f64> {
    Ok(multiplier_norm_radial_detailed(symbol, s, n, t, params, RADIAL_REL_TOL)?.value)
}
