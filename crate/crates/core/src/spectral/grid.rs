use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Uniform periodic grid on the box `[-L, L)^dim`.
///
/// Physical samples sit at `x_j = -L + j dx`; the frequency lattice is
/// `xi_k = (pi / L) k` with `k` in `[-N/2, N/2)` stored in FFT order
/// (index `j < N/2` maps to `k = j`, otherwise `k = j - N`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    dim: usize,
    points_per_axis: usize,
    half_length: f64,
}

impl GridSpec {
    pub fn new(dim: usize, points_per_axis: usize, half_length: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(invalid(format!("dimension must be 1, 2 or 3 (got {dim})")));
        }
        if points_per_axis < 2 || !points_per_axis.is_multiple_of(2) {
            return Err(invalid(format!("points per axis must be even and >= 2 (got {points_per_axis})")));
        }
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(invalid(format!("half length must be positive (got {half_length})")));
        }
        Ok(Self { dim, points_per_axis, half_length })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    /// Total number of samples, `N^dim`.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_length / self.points_per_axis as f64
    }

    /// `dx^dim`, the physical quadrature weight.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Lattice spacing in frequency, `pi / L`.
    pub fn frequency_step(&self) -> f64 {
        PI / self.half_length
    }

    /// `(pi / L)^dim`, the frequency quadrature weight.
    pub fn frequency_cell(&self) -> f64 {
        self.frequency_step().powi(self.dim as i32)
    }

    /// Signed wavenumber of an FFT-ordered index along one axis.
    pub fn wavenumber(&self, index: usize) -> i64 {
        let n = self.points_per_axis;
        if index < n / 2 {
            index as i64
        } else {
            index as i64 - n as i64
        }
    }

    pub fn coordinate(&self, index: usize) -> f64 {
        -self.half_length + index as f64 * self.spacing()
    }

    /// Splits a flat row-major index into per-axis indices (unused axes are 0).
    pub fn unflatten(&self, flat: usize) -> [usize; 3] {
        let n = self.points_per_axis;
        let mut idx = [0usize; 3];
        let mut rem = flat;
        for axis in (0..self.dim).rev() {
            idx[axis] = rem % n;
            rem /= n;
        }
        idx
    }

    pub fn flatten(&self, idx: [usize; 3]) -> usize {
        let n = self.points_per_axis;
        (0..self.dim).fold(0, |acc, axis| acc * n + idx[axis])
    }

    /// Flat index of the lattice point `-k` (wrapping the Nyquist index onto itself).
    pub fn mirror(&self, flat: usize) -> usize {
        let n = self.points_per_axis;
        let mut idx = self.unflatten(flat);
        for i in idx.iter_mut().take(self.dim) {
            *i = (n - *i) % n;
        }
        self.flatten(idx)
    }

    /// Frequency vector of a flat spectral index.
    pub fn frequency(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let step = self.frequency_step();
        let mut xi = [0.0; 3];
        for axis in 0..self.dim {
            xi[axis] = step * self.wavenumber(idx[axis]) as f64;
        }
        xi
    }

    /// `|xi|` at a flat spectral index.
    pub fn frequency_magnitude(&self, flat: usize) -> f64 {
        let xi = self.frequency(flat);
        (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt()
    }

    /// `|xi_k|` for every lattice point, in FFT order.
    pub fn frequency_magnitudes(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.frequency_magnitude(i)).collect()
    }

    /// Physical position of a flat index.
    pub fn position(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let mut x = [0.0; 3];
        for axis in 0..self.dim {
            x[axis] = self.coordinate(idx[axis]);
        }
        x
    }

    /// True when any axis sits on the Nyquist index `-N/2`.
    pub fn is_nyquist(&self, flat: usize) -> bool {
        let idx = self.unflatten(flat);
        idx.iter().take(self.dim).any(|&i| i == self.points_per_axis / 2)
    }

    /// True when some axis wavenumber exceeds `N/3` in magnitude (2/3 rule).
    pub fn is_aliased(&self, flat: usize) -> bool {
        let idx = self.unflatten(flat);
        let cut = self.points_per_axis as i64 / 3;
        idx.iter().take(self.dim).any(|&i| self.wavenumber(i).abs() > cut)
    }

    /// Sample a function of position onto the grid.
    pub fn sample(&self, f: impl Fn([f64; 3]) -> f64) -> Vec<f64> {
        (0..self.len()).map(|i| f(self.position(i))).collect()
    }

    /// Flat indices within `width` of the box edge along some axis.
    pub fn is_boundary(&self, flat: usize, width: f64) -> bool {
        let x = self.position(flat);
        x.iter().take(self.dim).any(|c| c.abs() >= self.half_length - width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_times_points_is_box_length() {
        let g = GridSpec::new(2, 64, 3.7).unwrap();
        assert_eq!(g.spacing() * 64.0, 2.0 * 3.7);
        assert_eq!(g.len(), 4096);
    }

    #[test]
    fn lattice_is_symmetric_except_nyquist() {
        let g = GridSpec::new(1, 8, 1.0).unwrap();
        let ks: Vec<i64> = (0..8).map(|i| g.wavenumber(i)).collect();
        assert_eq!(ks, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        for i in 0..8 {
            let m = g.mirror(i);
            if g.is_nyquist(i) {
                assert_eq!(m, i);
            } else {
                assert_eq!(g.wavenumber(m), -g.wavenumber(i));
            }
        }
    }

    #[test]
    fn flatten_round_trip() {
        let g = GridSpec::new(3, 4, 1.0).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.flatten(g.unflatten(i)), i);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(GridSpec::new(4, 8, 1.0).is_err());
        assert!(GridSpec::new(1, 7, 1.0).is_err());
        assert!(GridSpec::new(1, 8, 0.0).is_err());
    }
}
