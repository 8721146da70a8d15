//! Semi-analytic oracles independent of the FFT path: radial quadrature of whole-space
//! multiplier norms, Gamma-function limits, reference rates, an ODE integrator for
//! single modes, and rate fitting.

mod fit;
mod gamma;
pub mod ode;
pub mod quadrature;
mod radial;
mod rates;

pub use fit::{fit_rate, is_decreasing_from, relative_drift, FitMode, RateFit, MIN_FIT_SAMPLES};
pub use gamma::{a_tilde, gamma_limit, oscillatory_correction};
pub use ode::{dopri5, mode_ode_trajectory, OdeTolerance};
pub use quadrature::{integrate, integrate_panels, Quadrature};
pub(crate) use radial::phase_panels;
pub use radial::{
    multiplier_norm_radial, multiplier_norm_radial_detailed, radial_norm, sphere_area, MultiplierSymbol, RADIAL_REL_TOL,
};
pub use rates::{reference_rate_bns, reference_rate_dn};
