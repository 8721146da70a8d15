use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::SimConfig;
use super::stepper::{DuhamelStepper, SimState};
use crate::error::{Error, Result};
use crate::linear::DataMoments;
use crate::spectral::{
    boundary_mass_values, inverse_real, lebesgue_norm_values, moment_m, sobolev_norm_coeffs, Field, NormSeries,
    RadialLattice,
};
use crate::symbols::profile_g1_hat;

/// Series, snapshots and diagnostics of one run.
#[derive(Debug, Clone)]
pub struct SimulationOutput {
    /// `L2`, `Hdot:s=..`, `L6`, `Linf`, `profile_err:s=..`, `boundary_mass`,
    /// `zero_mode_residual`.
    pub series: Vec<NormSeries>,
    pub snapshots: Vec<(f64, Field)>,
    pub moments: DataMoments,
    pub summary: RunSummary,
    pub final_state: SimState,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub steps: usize,
    pub max_zero_mode_residual: f64,
    pub max_boundary_mass: f64,
    pub max_step_discrepancy: f64,
    /// `max |u|` over every step start and output time.
    pub max_abs: f64,
}

impl SimulationOutput {
    pub fn series(&self, label: &str) -> Option<&NormSeries> {
        self.series.iter().find(|s| s.label() == label)
    }
}

/// `G1(t, |xi|) P_{u1}` built from the conserved zero mode of `u_t`.
pub fn nonlinear_profile_u1(state: &SimState, t: f64) -> Result<Field> {
    if !(t > 0.0) {
        return Err(crate::error::invalid("time must be positive"));
    }
    let lattice = RadialLattice::new(&state.grid);
    Field::spectral(state.grid, profile_u1_coeffs(state, &lattice, t))
}

fn profile_u1_coeffs(state: &SimState, lattice: &RadialLattice, t: f64) -> Vec<Complex64> {
    let p = state.p_u1();
    let table = lattice.tabulate(|r| profile_g1_hat(t, r, &state.params));
    (0..lattice.len()).map(|i| Complex64::new(table[lattice.shell(i)] * p, 0.0)).collect()
}

pub fn run_simulation(config: &SimConfig) -> Result<SimulationOutput> {
    config.validate()?;
    let grid = config.grid()?;
    let (u0, u1) = config.data.build(grid, config.seed)?;
    run_simulation_with_data(config, &u0, &u1)
}

/// Runs `config` from explicit data instead of the configured preset.
pub fn run_simulation_with_data(config: &SimConfig, u0: &Field, u1: &Field) -> Result<SimulationOutput> {
    config.validate()?;
    let grid = config.grid()?;
    if *u0.grid() != grid || *u1.grid() != grid {
        return Err(Error::GridMismatch);
    }
    let params = config.params()?;
    let mut state = SimState::new(params, config.nonlinearity()?, u0, u1)?;
    let moments =
        DataMoments { p_v0: state.p_u0(), p_v1: state.p_u1(), m_v1: moment_m(&u1.to_physical(), config.strict)? };
    let stepper = DuhamelStepper::new(grid, &params, config.dt)?.with_step_tolerance(config.step_tol);
    let lattice = RadialLattice::new(&grid);

    let mut labels = vec!["L2".to_string()];
    labels.extend(config.sobolev.iter().map(|s| format!("Hdot:s={s}")));
    labels.push("L6".into());
    labels.push("Linf".into());
    let mut err_indices = vec![0.0];
    err_indices.extend(config.sobolev.iter().copied().filter(|s| *s != 0.0));
    labels.extend(err_indices.iter().map(|s| format!("profile_err:s={s}")));
    labels.push("boundary_mass".into());
    labels.push("zero_mode_residual".into());
    let mut series: Vec<NormSeries> = labels.iter().map(NormSeries::new).collect();

    let mut summary = RunSummary {
        steps: 0,
        max_zero_mode_residual: 0.0,
        max_boundary_mass: 0.0,
        max_step_discrepancy: 0.0,
        max_abs: 0.0,
    };
    let mut snapshots = Vec::new();
    for (out_index, &t_out) in config.output_times().iter().enumerate() {
        let target = (t_out / config.dt).round() as usize;
        while summary.steps < target {
            let report = stepper.step(&mut state)?;
            summary.steps += 1;
            state.t = summary.steps as f64 * config.dt;
            summary.max_step_discrepancy = summary.max_step_discrepancy.max(report.discrepancy);
            if report.max_abs.is_finite() {
                summary.max_abs = summary.max_abs.max(report.max_abs);
            }
        }
        let t = state.t;
        let values = inverse_real(&grid, &state.u_hat);
        let max_abs = lebesgue_norm_values(&grid, &values, f64::INFINITY);
        if !max_abs.is_finite() || max_abs > super::stepper::DEFAULT_BLOWUP_CEILING {
            return Err(Error::BlowUp { t, reason: format!("max |u| = {max_abs:.3e}") });
        }
        summary.max_abs = summary.max_abs.max(max_abs);
        let mass = boundary_mass_values(&grid, &values);
        summary.max_boundary_mass = summary.max_boundary_mass.max(mass);
        if let Some(tol) = config.boundary_tol {
            if mass > tol {
                return Err(Error::BoundaryMass { t, ratio: mass, tol });
            }
        }
        let residual = state.zero_mode_residual();
        summary.max_zero_mode_residual = summary.max_zero_mode_residual.max(residual);

        let mut row = vec![sobolev_norm_coeffs(&grid, &state.u_hat, 0.0)];
        row.extend(config.sobolev.iter().map(|&s| sobolev_norm_coeffs(&grid, &state.u_hat, s)));
        row.push(lebesgue_norm_values(&grid, &values, 6.0));
        row.push(max_abs);
        let profile = profile_u1_coeffs(&state, &lattice, t);
        let diff: Vec<Complex64> = state.u_hat.iter().zip(&profile).map(|(a, b)| a - b).collect();
        row.extend(err_indices.iter().map(|&s| sobolev_norm_coeffs(&grid, &diff, s)));
        row.push(mass);
        row.push(residual);
        for (s, v) in series.iter_mut().zip(row) {
            s.push(t, v)?;
        }
        if config.snapshot_every > 0 && out_index % config.snapshot_every == 0 {
            snapshots.push((t, Field::physical(grid, values)?));
        }
    }
    Ok(SimulationOutput { series, snapshots, moments, summary, final_state: state })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::LinearSolution;
    use crate::nonlinear::config::{DataPreset, OutputSchedule};
    use crate::nonlinear::NonlinearForm;

    fn config(amplitude: f64) -> SimConfig {
        SimConfig {
            dim: 2,
            points: 64,
            half_length: 24.0,
            mu: 0.5,
            p: 3.0,
            form: NonlinearForm::Signed,
            sign: 1.0,
            scale: 1.0,
            dt: 0.25,
            t_end: 8.0,
            sobolev: vec![1.0],
            strict: false,
            seed: 0,
            snapshot_every: 0,
            boundary_tol: None,
            step_tol: 0.1,
            data: DataPreset::gaussian(amplitude, amplitude, 1.5, 0.5),
            output: OutputSchedule::Linear { count: 8 },
        }
    }

    #[test]
    fn zero_data_give_zero_series() {
        let out = run_simulation(&config(0.0)).unwrap();
        for s in &out.series {
            assert!(s.values().iter().all(|v| *v == 0.0), "{}", s.label());
        }
    }

    #[test]
    fn switched_off_nonlinearity_matches_linear_solution() {
        let mut cfg = config(0.3);
        cfg.scale = 0.0;
        let (u0, u1) = cfg.data.build(cfg.grid().unwrap(), 0).unwrap();
        let out = run_simulation_with_data(&cfg, &u0, &u1).unwrap();
        let lin = LinearSolution::new(cfg.params().unwrap(), &u0, &u1).unwrap();
        let v = lin.evolve_coeffs(cfg.t_end);
        let scale = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let err = v.iter().zip(&out.final_state.u_hat).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12 * scale, "{err}");
    }

    #[test]
    fn zero_mode_law_holds_at_outputs() {
        let out = run_simulation(&config(0.2)).unwrap();
        assert!(out.summary.max_zero_mode_residual < 1e-12);
        let z = out.series("zero_mode_residual").unwrap();
        assert_eq!(z.len(), 8);
    }

    #[test]
    fn profile_zero_mode_is_t_times_mean() {
        let cfg = config(0.2);
        let out = run_simulation(&cfg).unwrap();
        let prof = nonlinear_profile_u1(&out.final_state, 8.0).unwrap();
        assert!((prof.as_spectral().unwrap()[0].re - 8.0 * out.moments.p_v1).abs() < 1e-12);
    }

    #[test]
    fn outputs_are_deterministic() {
        let a = run_simulation(&config(0.2)).unwrap();
        let b = run_simulation(&config(0.2)).unwrap();
        assert_eq!(a.series, b.series);
    }
}
