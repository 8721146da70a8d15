//! Grid verification of the small-frequency error bounds between the exact propagators
//! and the diffusion-wave profiles.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::cutoffs::ZoneCutoffs;
use super::kernels::kernels;
use super::profiles::{profile_g0_hat, profile_g1_hat};
use super::roots::ModelParams;
use crate::error::{invalid, Result};
use crate::sampling::{lin_spaced, log_spaced};

/// The three bounded quantities, each divided by its envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorBound {
    /// `|K1 - G1| / e^{-c r^4 t}`
    K1,
    /// `|K0 - G0| / (r e^{-c r^4 t})`
    K0,
    /// `|K1 - G1 + (t/8) r^4 G0| / (r e^{-c r^4 t})`
    K1Refined,
}

impl ErrorBound {
    pub const ALL: [ErrorBound; 3] = [ErrorBound::K1, ErrorBound::K0, ErrorBound::K1Refined];

    pub fn id(&self) -> &'static str {
        match self {
            ErrorBound::K1 => "k1-g1",
            ErrorBound::K0 => "k0-g0",
            ErrorBound::K1Refined => "k1-g1-refined",
        }
    }
}

/// Envelope rate used in the bounds.
pub fn envelope_rate(params: &ModelParams) -> f64 {
    0.5 * params.mu()
}

/// Ratios for the three bounds at one `(t, r)`, in [`ErrorBound::ALL`] order.
pub fn error_kernel_ratios(t: f64, r: f64, params: &ModelParams) -> [f64; 3] {
    let c = envelope_rate(params);
    let (k0, k1) = kernels(t, r, params);
    let g0 = profile_g0_hat(t, r, params);
    let g1 = profile_g1_hat(t, r, params);
    let r4 = r.powi(4);
    let nums = [(k1 - g1).abs(), (k0 - g0).abs(), (k1 - g1 + t / 8.0 * r4 * g0).abs()];
    let growth = (c * r4 * t).exp();
    let scale = [1.0, r, r];
    let mut out = [0.0; 3];
    for i in 0..3 {
        if nums[i] != 0.0 {
            out[i] = nums[i] * growth / scale[i];
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorKernelReport {
    pub c: f64,
    /// Maximum ratio per bound; these are the fitted constants.
    pub constants: [f64; 3],
    /// `(t, r)` where each maximum is attained.
    pub argmax: [(f64, f64); 3],
    pub finite: bool,
}

fn check_grids(t_grid: &[f64], r_grid: &[f64]) -> Result<()> {
    let eps0 = ZoneCutoffs::default().eps0();
    if t_grid.is_empty() || r_grid.is_empty() {
        return Err(invalid("error-kernel grids must be non-empty"));
    }
    if t_grid.iter().any(|&t| !(t > 0.0)) {
        return Err(invalid("error-kernel times must be positive"));
    }
    if r_grid.iter().any(|&r| !(0.0..=eps0).contains(&r)) {
        return Err(invalid(format!("error-kernel radii must lie in [0, {eps0}]")));
    }
    Ok(())
}

pub fn verify_error_kernels(params: &ModelParams, t_grid: &[f64], r_grid: &[f64]) -> Result<ErrorKernelReport> {
    check_grids(t_grid, r_grid)?;
    let mut constants = [0.0f64; 3];
    let mut argmax = [(t_grid[0], r_grid[0]); 3];
    let mut finite = true;
    for &t in t_grid {
        for &r in r_grid {
            let ratios = error_kernel_ratios(t, r, params);
            for i in 0..3 {
                if !ratios[i].is_finite() {
                    finite = false;
                } else if ratios[i] > constants[i] {
                    constants[i] = ratios[i];
                    argmax[i] = (t, r);
                }
            }
        }
    }
    Ok(ErrorKernelReport { c: envelope_rate(params), constants, argmax, finite })
}

/// Writes every grid ratio as CSV with columns `t,r,bound_id,ratio`.
pub fn write_error_kernel_csv<W: Write>(
    mut out: W,
    params: &ModelParams,
    t_grid: &[f64],
    r_grid: &[f64],
) -> Result<()> {
    check_grids(t_grid, r_grid)?;
    writeln!(out, "t,r,bound_id,ratio")?;
    for &t in t_grid {
        for &r in r_grid {
            let ratios = error_kernel_ratios(t, r, params);
            for (bound, ratio) in ErrorBound::ALL.iter().zip(ratios) {
                writeln!(out, "{t},{r},{},{ratio}", bound.id())?;
            }
        }
    }
    Ok(())
}

/// Fitted constants on a base grid and on its 2x refinement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementStudy {
    pub coarse: ErrorKernelReport,
    pub fine: ErrorKernelReport,
    /// `|fine - coarse| / coarse` per bound.
    pub relative_change: [f64; 3],
}

impl RefinementStudy {
    pub fn stable(&self, tol: f64) -> bool {
        self.coarse.finite && self.fine.finite && self.relative_change.iter().all(|&d| d < tol)
    }
}

/// Log-spaced `t` and linear `r` grids with `nt x nr` points, then the nested grid with
/// twice the density on both axes.
pub fn refinement_study(
    params: &ModelParams,
    t_range: (f64, f64),
    r_range: (f64, f64),
    nt: usize,
    nr: usize,
) -> Result<RefinementStudy> {
    if nt < 2 || nr < 2 {
        return Err(invalid("refinement study needs at least two points per axis"));
    }
    let coarse =
        verify_error_kernels(params, &log_spaced(t_range.0, t_range.1, nt), &lin_spaced(r_range.0, r_range.1, nr))?;
    let fine = verify_error_kernels(
        params,
        &log_spaced(t_range.0, t_range.1, 2 * nt - 1),
        &lin_spaced(r_range.0, r_range.1, 2 * nr - 1),
    )?;
    let relative_change =
        std::array::from_fn(|i| (fine.constants[i] - coarse.constants[i]).abs() / coarse.constants[i]);
    Ok(RefinementStudy { coarse, fine, relative_change })
}
