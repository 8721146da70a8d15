//! Pseudo-spectral simulation and rate verification for the dissipative Boussinesq
//! equation `u_tt - Lap u + Lap^2 u + 2 mu Lap^2 u_t = Lap f(u)`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;
pub mod experiments;
pub mod linear;
pub mod nonlinear;
pub mod oracle;
pub mod sampling;
pub mod spectral;
pub mod symbols;

pub use error::{Error, Result};
pub use experiments::{list_scenarios, run_scenario, Overrides, Report, ScenarioId};
pub use linear::{LinearSolution, Subtract};
pub use nonlinear::{NonlinearitySpec, SimConfig, SimState};
pub use oracle::{FitMode, RateFit};
pub use spectral::{Field, GridSpec, NormSeries, Samples};
pub use symbols::{CharRoots, ModelParams, Regime, ZoneCutoffs};
