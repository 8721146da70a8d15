use num_complex::Complex64;

use super::nonlinearity::{dealias_mask, nonlinear_coeffs, NonlinearitySpec};
use crate::error::{invalid, Error, Result};
use crate::spectral::{inverse_real, Field, GridSpec, RadialLattice};
use crate::symbols::{step_coefficients, ModelParams, StepCoefficients};

pub const DEFAULT_BLOWUP_CEILING: f64 = 1e6;
pub const DEFAULT_STEP_TOL: f64 = 0.1;

/// `(u^, u_t^)` at time `t`.
#[derive(Debug, Clone)]
pub struct SimState {
    pub t: f64,
    pub u_hat: Vec<Complex64>,
    pub ut_hat: Vec<Complex64>,
    pub grid: GridSpec,
    pub params: ModelParams,
    pub nonlinearity: NonlinearitySpec,
    initial_zero_modes: (f64, f64),
}

impl SimState {
    pub fn new(params: ModelParams, nonlinearity: NonlinearitySpec, u0: &Field, u1: &Field) -> Result<Self> {
        if u0.grid() != u1.grid() {
            return Err(Error::GridMismatch);
        }
        nonlinearity.validate()?;
        let grid = *u0.grid();
        let u_hat = u0.to_spectral().into_spectral_coeffs();
        let ut_hat = u1.to_spectral().into_spectral_coeffs();
        let initial_zero_modes = (u_hat[0].re, ut_hat[0].re);
        Ok(Self { t: 0.0, u_hat, ut_hat, grid, params, nonlinearity, initial_zero_modes })
    }

    pub fn u(&self) -> Field {
        Field::spectral(self.grid, self.u_hat.clone()).expect("state arrays match the grid")
    }

    pub fn ut(&self) -> Field {
        Field::spectral(self.grid, self.ut_hat.clone()).expect("state arrays match the grid")
    }

    /// `P_{u1}`, the conserved zero mode of `u_t`.
    pub fn p_u1(&self) -> f64 {
        self.initial_zero_modes.1
    }

    pub fn p_u0(&self) -> f64 {
        self.initial_zero_modes.0
    }

    /// `|u^(t, 0) - u0^(0) - t u1^(0)|`, scaled by `max(1, |u0^(0)| + t |u1^(0)|)`.
    pub fn zero_mode_residual(&self) -> f64 {
        let (a, b) = self.initial_zero_modes;
        let law = a + self.t * b;
        let scale = 1.0f64.max(a.abs() + self.t * b.abs());
        (self.u_hat[0] - Complex64::new(law, 0.0)).norm() / scale
    }
}

/// Diagnostics of one accepted step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    /// Relative L2 distance between predictor and corrector.
    pub discrepancy: f64,
    /// `max |u|` at the start of the step.
    pub max_abs: f64,
}

/// Fixed-step exponential integrator: the linear flow is exact per mode and the forcing
/// `-|xi|^2 f^(u)` is interpolated linearly between a frozen-forcing predictor and the
/// step end.
#[derive(Debug, Clone)]
pub struct DuhamelStepper {
    dt: f64,
    grid: GridSpec,
    lattice: RadialLattice,
    coeffs: Vec<StepCoefficients>,
    forcing: Vec<f64>,
    keep: Vec<bool>,
    step_tol: f64,
    ceiling: f64,
}

impl DuhamelStepper {
    pub fn new(grid: GridSpec, params: &ModelParams, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(invalid(format!("time step must be positive (got {dt})")));
        }
        let lattice = RadialLattice::new(&grid);
        let coeffs = lattice.tabulate(|r| step_coefficients(dt, r, params));
        let forcing = lattice.tabulate(|r| -r * r);
        Ok(Self {
            dt,
            grid,
            lattice,
            coeffs,
            forcing,
            keep: dealias_mask(&grid),
            step_tol: DEFAULT_STEP_TOL,
            ceiling: DEFAULT_BLOWUP_CEILING,
        })
    }

    pub fn with_step_tolerance(mut self, tol: f64) -> Self {
        self.step_tol = tol;
        self
    }

    pub fn with_blowup_ceiling(mut self, ceiling: f64) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn forcing(&self, t: f64, values: &[f64], spec: &NonlinearitySpec) -> Result<Vec<Complex64>> {
        let mut g = nonlinear_coeffs(&self.grid, values, spec, &self.keep).map_err(|e| at_time(e, t))?;
        for (i, c) in g.iter_mut().enumerate() {
            *c *= self.forcing[self.lattice.shell(i)];
        }
        Ok(g)
    }

    fn check_amplitude(&self, t: f64, values: &[f64]) -> Result<f64> {
        let max = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if !max.is_finite() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BlowUp { t, reason: "non-finite solution values".into() });
        }
        if max > self.ceiling {
            return Err(Error::BlowUp { t, reason: format!("max |u| = {max:.3e} exceeds {:.1e}", self.ceiling) });
        }
        Ok(max)
    }

    /// Advances `state` by one step of length `dt`.
    pub fn step(&self, state: &mut SimState) -> Result<StepReport> {
        if state.grid != self.grid {
            return Err(Error::GridMismatch);
        }
        let n = self.grid.len();
        let t = state.t;
        let mut lin_u = vec![Complex64::new(0.0, 0.0); n];
        let mut lin_ut = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let c = &self.coeffs[self.lattice.shell(i)];
            lin_u[i] = state.u_hat[i] * c.k0 + state.ut_hat[i] * c.k1;
            lin_ut[i] = state.u_hat[i] * c.dk0 + state.ut_hat[i] * c.dk1;
        }
        if !state.nonlinearity.is_active() {
            state.u_hat = lin_u;
            state.ut_hat = lin_ut;
            state.t = t + self.dt;
            return Ok(StepReport { discrepancy: 0.0, max_abs: f64::NAN });
        }
        let u_now = inverse_real(&self.grid, &state.u_hat);
        let max_abs = self.check_amplitude(t, &u_now)?;
        let g0 = self.forcing(t, &u_now, &state.nonlinearity)?;

        let mut predictor = lin_u.clone();
        for i in 0..n {
            predictor[i] += g0[i] * self.coeffs[self.lattice.shell(i)].w0;
        }
        let u_pred = inverse_real(&self.grid, &predictor);
        self.check_amplitude(t + self.dt, &u_pred)?;
        let g1 = self.forcing(t + self.dt, &u_pred, &state.nonlinearity)?;

        let (mut diff2, mut norm2) = (0.0, 0.0);
        for i in 0..n {
            let c = &self.coeffs[self.lattice.shell(i)];
            let dg = g1[i] - g0[i];
            let correction = dg * c.w1;
            let u_new = predictor[i] + correction;
            diff2 += correction.norm_sqr();
            norm2 += u_new.norm_sqr();
            state.u_hat[i] = u_new;
            state.ut_hat[i] = lin_ut[i] + g0[i] * c.k1 + dg * (c.w0 / self.dt);
        }
        let discrepancy = if norm2 > 0.0 { (diff2 / norm2).sqrt() } else { 0.0 };
        state.t = t + self.dt;
        if discrepancy > self.step_tol {
            return Err(Error::StepRejected { t, discrepancy, tol: self.step_tol });
        }
        Ok(StepReport { discrepancy, max_abs })
    }
}

fn at_time(e: Error, t: f64) -> Error {
    match e {
        Error::BlowUp { reason, .. } => Error::BlowUp { t, reason },
        other => other,
    }
}

/// One step of length `dt` from `state`.
pub fn duhamel_step(state: &SimState, dt: f64) -> Result<SimState> {
    let stepper = DuhamelStepper::new(state.grid, &state.params, dt)?;
    let mut next = state.clone();
    stepper.step(&mut next)?;
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::LinearSolution;
    use crate::nonlinear::NonlinearForm;
    use crate::oracle::{dopri5, OdeTolerance};
    use crate::symbols::kernel_k1_hat;

    fn setup(amplitude: f64) -> (GridSpec, ModelParams, Field, Field) {
        let g = GridSpec::new(2, 32, 8.0).unwrap();
        let u0 = Field::from_fn(g, |x| amplitude * (-(x[0] * x[0] + x[1] * x[1])).exp());
        let u1 = Field::from_fn(g, |x| amplitude * (-((x[0] - 0.5).powi(2) + x[1] * x[1])).exp());
        (g, ModelParams::new(0.5).unwrap(), u0, u1)
    }

    #[test]
    fn zero_amplitude_reproduces_linear_flow() {
        let (_, params, u0, u1) = setup(1.0);
        let spec = NonlinearitySpec::new(3.0, NonlinearForm::Signed, 1.0).unwrap().with_scale(0.0);
        let state = SimState::new(params, spec, &u0, &u1).unwrap();
        let next = duhamel_step(&state, 0.3).unwrap();
        let lin = LinearSolution::new(params, &u0, &u1).unwrap().evolve_coeffs(0.3);
        for (a, b) in next.u_hat.iter().zip(&lin) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn constant_forcing_matches_ode_solution() {
        // w'' + a w' + b w = g with zero data: w(dt) = g W0, w'(dt) = g K1(dt)
        let params = ModelParams::new(0.5).unwrap();
        let g = 0.37;
        for (r, dt) in [(0.0, 0.5), (0.05, 0.7), (0.9, 0.7), (2.5, 0.3)] {
            let c = step_coefficients(dt, r, &params);
            let (a, b) = (params.damping(r), ModelParams::stiffness(r));
            let y =
                dopri5(|_, y: &[f64; 2]| [y[1], g - a * y[1] - b * y[0]], 0.0, [0.0, 0.0], dt, OdeTolerance::default())
                    .unwrap();
            assert!((c.w0 * g - y[0]).abs() < 1e-10 * (1.0 + y[0].abs()), "r={r}");
            assert!((c.k1 * g - y[1]).abs() < 1e-10 * (1.0 + y[1].abs()), "r={r}");
            assert!((kernel_k1_hat(dt, r, &params) - c.k1).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_mode_law_and_symmetry_hold_with_forcing() {
        let (_, params, u0, u1) = setup(0.5);
        let spec = NonlinearitySpec::new(3.0, NonlinearForm::Modulus, 1.0).unwrap();
        let mut state = SimState::new(params, spec, &u0, &u1).unwrap();
        let stepper = DuhamelStepper::new(state.grid, &params, 0.25).unwrap();
        for _ in 0..20 {
            stepper.step(&mut state).unwrap();
            assert!(state.zero_mode_residual() < 1e-12);
        }
        assert!(state.u().conjugate_symmetry_defect() < 1e-12);
        assert!(state.ut().conjugate_symmetry_defect() < 1e-12);
    }

    #[test]
    fn large_data_trigger_blow_up() {
        let (_, params, u0, u1) = setup(10.0);
        let spec = NonlinearitySpec::new(3.0, NonlinearForm::Signed, 1.0).unwrap();
        let mut state = SimState::new(params, spec, &u0, &u1).unwrap();
        let stepper = DuhamelStepper::new(state.grid, &params, 0.25).unwrap().with_blowup_ceiling(50.0);
        let mut result = Ok(StepReport { discrepancy: 0.0, max_abs: 0.0 });
        for _ in 0..40 {
            result = stepper.step(&mut state);
            if result.is_err() {
                break;
            }
        }
        assert!(matches!(result, Err(Error::BlowUp { .. }) | Err(Error::StepRejected { .. })));
    }
}
