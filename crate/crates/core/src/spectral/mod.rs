//! Grids, the continuous-scaling discrete Fourier transform, norms and moments.

mod fft;
mod field;
mod grid;
mod lattice;
pub mod norms;
mod series;
pub mod snapshot;

pub(crate) use field::{forward, inverse_real};
pub use field::{Field, Samples};
pub use grid::GridSpec;
pub use lattice::RadialLattice;
pub use norms::{boundary_mass, lebesgue_norm, moment_m, moment_p, sobolev_norm};
pub(crate) use norms::{boundary_mass_values, lebesgue_norm_values, sobolev_norm_coeffs};
pub use series::{read_series_csv, write_series_csv, NormSeries};
