//! Shared fixtures for the benchmarks.

use boussinesq_core::nonlinear::{NonlinearForm, NonlinearitySpec, SimState};
use boussinesq_core::{Field, GridSpec, ModelParams};

pub fn params() -> ModelParams {
    ModelParams::new(0.5).expect("valid mu")
}

/// Radii spanning the small, bounded and large frequency zones.
pub fn radii(count: usize) -> Vec<f64> {
    (0..count).map(|i| 8.0 * i as f64 / count as f64).collect()
}

/// Small Gaussian data for a `p = 5` signed run on an `N^dim` grid.
pub fn small_data_state(dim: usize, points: usize) -> SimState {
    let grid = GridSpec::new(dim, points, 0.75 * points as f64).expect("valid grid");
    let u0 = Field::zeros(grid);
    let u1 = Field::from_fn(grid, |x| 0.15 * (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.25).exp());
    let nl = NonlinearitySpec::new(5.0, NonlinearForm::Signed, 1.0).expect("valid nonlinearity");
    SimState::new(params(), nl, &u0, &u1).expect("valid state")
}
