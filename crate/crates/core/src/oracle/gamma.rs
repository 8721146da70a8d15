//! Gamma-function limits of the profile norms and their time-domain integrals.

use statrs::function::gamma::gamma;

use super::quadrature::integrate_panels;
use super::radial::{gaussian_cutoff, phase_panels};
use crate::error::{invalid, Result};
use crate::symbols::ModelParams;

/// `(1/8) (2 mu)^{-(2s+n+4m)/4} Gamma((2s+n)/4 + m)`.
pub fn gamma_limit(s: f64, n: usize, m: u32, params: &ModelParams) -> Result<f64> {
    let k = 2.0 * s + n as f64;
    if !(k > 0.0) {
        return Err(invalid("gamma limit needs 2s + n > 0"));
    }
    let m = m as f64;
    Ok(0.125 * (2.0 * params.mu()).powf(-(k + 4.0 * m) / 4.0) * gamma(k / 4.0 + m))
}

fn scaled_integral(
    t: f64,
    power: f64,
    params: &ModelParams,
    rel_tol: f64,
    abs_tol: f64,
    weight: impl Fn(f64) -> f64,
) -> Result<f64> {
    if !(t > 0.0) {
        return Err(invalid("time must be positive"));
    }
    let a = 2.0 * params.mu();
    let eta_max = gaussian_cutoff(power / 4.0) / a.powf(0.25);
    let (t34, t14) = (t.powf(0.75), t.powf(0.25));
    let breaks = phase_panels(eta_max, |eta| 2.0 * (t34 + 1.5 * eta * eta * t14));
    let q = integrate_panels(
        |eta: f64| {
            let phase = eta * t34 + 0.5 * eta.powi(3) * t14;
            eta.powf(power) * weight(phase) * (-a * eta.powi(4)).exp()
        },
        &breaks,
        rel_tol,
        abs_tol,
        200_000,
    )?;
    Ok(q.value)
}

/// `A(t; m) = int_0^inf eta^{2s+n-1+4m} cos^2(eta t^{3/4} + eta^3 t^{1/4} / 2) e^{-2 mu eta^4} d eta`.
pub fn a_tilde(t: f64, s: f64, n: usize, m: u32, params: &ModelParams) -> Result<f64> {
    let power = 2.0 * s + n as f64 - 1.0 + 4.0 * m as f64;
    scaled_integral(t, power, params, 1e-10, 0.0, |phase| phase.cos().powi(2))
}

/// `int_0^inf cos(2 eta t^{3/4} + eta^3 t^{1/4}) eta^{2s+n-1} e^{-2 mu eta^4} d eta`.
pub fn oscillatory_correction(t: f64, s: f64, n: usize, params: &ModelParams) -> Result<f64> {
    let power = 2.0 * s + n as f64 - 1.0;
    let scale = 2.0 * gamma_limit(s, n, 0, params)?;
    scaled_integral(t, power, params, 0.0, 1e-10 * scale, |phase| (2.0 * phase).cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_and_recursion() {
        let p = ModelParams::new(0.5).unwrap();
        let g = gamma_limit(0.0, 2, 0, &p).unwrap();
        assert!((g - std::f64::consts::PI.sqrt() / 8.0).abs() < 1e-15);
        assert!((g - 0.2215567).abs() < 1e-7);
        for (s, n) in [(0.0, 2), (1.0, 3), (0.5, 1)] {
            for m in 0..2 {
                let ratio = gamma_limit(s, n, m + 1, &p).unwrap() / gamma_limit(s, n, m, &p).unwrap();
                let expect = ((2.0 * s + n as f64) / 4.0 + m as f64) / (2.0 * p.mu());
                assert!((ratio - expect).abs() < 1e-12 * expect);
            }
        }
    }

    #[test]
    fn time_domain_integral_approaches_limit() {
        let p = ModelParams::new(0.5).unwrap();
        let a = a_tilde(1e6, 0.0, 2, 0, &p).unwrap();
        let g = gamma_limit(0.0, 2, 0, &p).unwrap();
        assert!((a / g - 1.0).abs() < 0.01);
    }
}
