//! Smooth partition of unity over small, bounded and large frequencies.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Zone radii: `chi_int = 1` on `[0, eps0/2]` and vanishes beyond `eps0`; `chi_ext = 1`
/// beyond `2 n0` and vanishes below `n0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZoneCutoffs {
    eps0: f64,
    n0: f64,
}

impl Default for ZoneCutoffs {
    fn default() -> Self {
        Self { eps0: 0.5, n0: 2.0 }
    }
}

impl ZoneCutoffs {
    pub fn new(eps0: f64, n0: f64) -> Result<Self> {
        if !(eps0 > 0.0 && n0 > 0.0 && eps0 < n0) {
            return Err(invalid(format!("cutoff radii need 0 < eps0 < n0 (got {eps0}, {n0})")));
        }
        Ok(Self { eps0, n0 })
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }

    /// `(chi_int, chi_bdd, chi_ext)` at radius `r`.
    pub fn evaluate(&self, r: f64) -> (f64, f64, f64) {
        let half = 0.5 * self.eps0;
        let chi_int = 1.0 - smooth_step((r - half) / half);
        let chi_ext = smooth_step((r - self.n0) / self.n0);
        (chi_int, 1.0 - chi_int - chi_ext, chi_ext)
    }
}

/// `exp(-1/x)` for `x > 0`, zero otherwise.
fn mollifier(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

/// Smooth step from 0 on `x <= 0` to 1 on `x >= 1`.
fn smooth_step(x: f64) -> f64 {
    let a = mollifier(x);
    let b = mollifier(1.0 - x);
    a / (a + b)
}

pub fn cutoffs(r: f64, zones: &ZoneCutoffs) -> (f64, f64, f64) {
    zones.evaluate(r)
}
