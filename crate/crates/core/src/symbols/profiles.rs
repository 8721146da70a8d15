//! Diffusion-wave profile symbols.

use super::kernels::sinc;
use super::roots::ModelParams;

/// Dispersive phase `r t + r^3 t / 2`.
pub fn profile_phase(t: f64, r: f64) -> f64 {
    r * t * (1.0 + 0.5 * r * r)
}

/// `cos(r t + r^3 t / 2) e^{-mu r^4 t}`.
pub fn profile_g0_hat(t: f64, r: f64, params: &ModelParams) -> f64 {
    profile_phase(t, r).cos() * (-params.mu() * r.powi(4) * t).exp()
}

/// `sin(r t + r^3 t / 2) / r * e^{-mu r^4 t}`, equal to `t` at `r = 0`.
pub fn profile_g1_hat(t: f64, r: f64, params: &ModelParams) -> f64 {
    let amplitude = t * (1.0 + 0.5 * r * r);
    amplitude * sinc(profile_phase(t, r)) * (-params.mu() * r.powi(4) * t).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_and_unit_values() {
        let p = ModelParams::new(0.5).unwrap();
        for t in [0.0, 1.0, 1e4] {
            assert_eq!(profile_g0_hat(t, 0.0, &p), 1.0);
            assert_eq!(profile_g1_hat(t, 0.0, &p), t);
        }
        let g0 = profile_g0_hat(1.0, 1.0, &p);
        assert!((g0 - 1.5f64.cos() * (-0.5f64).exp()).abs() < 1e-15);
        assert!((g0 - 0.0429).abs() < 1e-4);
        let g1 = profile_g1_hat(2.0, 0.7, &p);
        let direct = (0.7 * 2.0 + 0.5 * 0.343 * 2.0f64).sin() / 0.7 * (-0.5 * 0.7f64.powi(4) * 2.0).exp();
        assert!((g1 - direct).abs() < 1e-14);
    }
}
