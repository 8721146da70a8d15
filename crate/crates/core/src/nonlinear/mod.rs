//! Nonlinear evolution through the Duhamel formula with the exact linear propagator,
//! dealiased nonlinearity evaluation, and the nonlinear diffusion-wave profile.

mod config;
mod nonlinearity;
mod simulate;
mod stepper;

pub use config::{DataPreset, OutputSchedule, PresetKind, SimConfig};
pub use nonlinearity::{apply_nonlinearity, NonlinearForm, NonlinearitySpec};
pub use simulate::{nonlinear_profile_u1, run_simulation, run_simulation_with_data, RunSummary, SimulationOutput};
pub use stepper::{duhamel_step, DuhamelStepper, SimState, StepReport, DEFAULT_BLOWUP_CEILING, DEFAULT_STEP_TOL};
