use boussinesq_core::linear::{evolve_linear, LinearSolution};
use boussinesq_core::nonlinear::{duhamel_step, NonlinearForm, NonlinearitySpec, SimState};
use boussinesq_core::oracle::{fit_rate, FitMode};
use boussinesq_core::sampling::log_spaced;
use boussinesq_core::spectral::{lebesgue_norm, sobolev_norm};
use boussinesq_core::symbols::{char_roots, kernel_derivatives, kernels};
use boussinesq_core::{Field, GridSpec, ModelParams, NormSeries};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_wronskian_follows_abel(mu in 0.05f64..0.95, r in 0.0f64..6.0, t in 0.0f64..20.0) {
        // W = K0 K1' - K1 K0' obeys W' = -2 mu r^4 W with W(0) = 1
        let p = ModelParams::new(mu).unwrap();
        let (k0, k1) = kernels(t, r, &p);
        let (dk0, dk1) = kernel_derivatives(t, r, &p);
        let w = k0 * dk1 - k1 * dk0;
        let expect = (-p.damping(r) * t).exp();
        prop_assert!((w - expect).abs() <= 1e-9 * (1.0 + expect), "W = {w}, expected {expect}");
    }

    #[test]
    fn roots_satisfy_vieta(mu in 0.05f64..0.95, r in 1e-3f64..50.0) {
        let p = ModelParams::new(mu).unwrap();
        let c = char_roots(r, &p);
        let sum = c.lambda_plus + c.lambda_minus;
        let prod = c.lambda_plus * c.lambda_minus;
        let b = ModelParams::stiffness(r);
        prop_assert!((sum.re + p.damping(r)).abs() <= 1e-10 * p.damping(r).max(1.0) + 1e-9 * b.sqrt());
        prop_assert!((prod.re - b).abs() <= 1e-12 * b);
        prop_assert!(c.lambda_plus.re <= 0.0 && c.lambda_minus.re <= 0.0);
    }

    #[test]
    fn parseval_and_round_trip(seed in any::<u64>(), width in 0.8f64..2.0) {
        let grid = GridSpec::new(2, 32, 12.0).unwrap();
        let shift = (seed % 7) as f64 * 0.3;
        let f = Field::from_fn(grid, |x| (-((x[0] - shift).powi(2) + x[1] * x[1]) / (width * width)).exp());
        let back = f.to_spectral().to_physical();
        let (a, b) = (f.as_physical().unwrap(), back.as_physical().unwrap());
        prop_assert!(a.iter().zip(b).all(|(u, v)| (u - v).abs() < 1e-12));
        let l2 = lebesgue_norm(&f, 2.0).unwrap();
        prop_assert!((sobolev_norm(&f, 0.0).unwrap() - l2).abs() < 1e-12 * l2);
    }

    #[test]
    fn fit_recovers_power_laws(k in -1.5f64..1.5, c in 0.1f64..10.0) {
        let t = log_spaced(10.0, 1e4, 20);
        let v = t.iter().map(|t| c * t.powf(k)).collect();
        let fit = fit_rate(&NormSeries::from_parts("x", t, v).unwrap(), None, FitMode::PowerLaw).unwrap();
        prop_assert!((fit.slope - k).abs() < 1e-10);
        prop_assert!((fit.intercept - c.ln()).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn nonlinear_steps_keep_the_zero_mode_law(amp in 0.01f64..0.3, p in 2.0f64..6.0, dt in 0.05f64..0.5) {
        let grid = GridSpec::new(2, 32, 16.0).unwrap();
        let params = ModelParams::new(0.5).unwrap();
        let u0 = Field::from_fn(grid, |x| amp * (-(x[0] * x[0] + x[1] * x[1]) / 4.0).exp());
        let u1 = u0.scale(0.5);
        let nl = NonlinearitySpec::new(p, NonlinearForm::Modulus, 1.0).unwrap();
        let mut state = SimState::new(params, nl, &u0, &u1).unwrap();
        for _ in 0..10 {
            state = duhamel_step(&state, dt).unwrap();
        }
        prop_assert!(state.zero_mode_residual() < 1e-12);
    }
}

#[test]
fn linear_flow_is_a_semigroup() {
    let grid = GridSpec::new(1, 128, 32.0).unwrap();
    let p = ModelParams::new(0.3).unwrap();
    let v0 = Field::from_fn(grid, |x| (-x[0] * x[0]).exp());
    let v1 = Field::from_fn(grid, |x| x[0] * (-x[0] * x[0] / 2.0).exp());
    let sol = LinearSolution::new(p, &v0, &v1).unwrap();
    let (s, t) = (0.7, 1.9);
    let mid_u = evolve_linear(&sol, s).unwrap();
    let mid_ut = boussinesq_core::linear::evolve_time_derivative(&sol, s).unwrap();
    let restarted = LinearSolution::new(p, &mid_u, &mid_ut).unwrap();
    let a = evolve_linear(&restarted, t).unwrap().into_spectral_coeffs();
    let b = evolve_linear(&sol, s + t).unwrap().into_spectral_coeffs();
    let scale = b.iter().map(|c| c.norm()).fold(0.0, f64::max);
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).norm() < 1e-12 * scale));
}
