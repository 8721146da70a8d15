//! Frequency-space scalar functions: characteristic roots and their expansions, exact
//! propagators, profile symbols, zone cutoffs and error-kernel verification.

mod cutoffs;
pub mod error_kernels;
mod kernels;
mod profiles;
mod roots;

pub use cutoffs::{cutoffs, ZoneCutoffs};
pub use error_kernels::{
    envelope_rate, error_kernel_ratios, refinement_study, verify_error_kernels, write_error_kernel_csv, ErrorBound,
    ErrorKernelReport, RefinementStudy,
};
pub use kernels::{kernel_derivatives, kernel_k0_hat, kernel_k1_hat, kernels, step_coefficients, StepCoefficients};
pub use profiles::{profile_g0_hat, profile_g1_hat, profile_phase};
pub use roots::{
    char_roots, degeneracy_threshold, degenerate_radius, expansion_remainder, small_freq_expansion, CharRoots,
    ModelParams, Regime,
};
