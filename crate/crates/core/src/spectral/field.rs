use num_complex::Complex64;
use rustfft::FftDirection;

use super::fft;
use super::grid::GridSpec;
use crate::error::{Error, Result};

/// Storage of a field: real samples or continuous-transform coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum Samples {
    Physical(Vec<f64>),
    Spectral(Vec<Complex64>),
}

/// A real scalar function on a [`GridSpec`].
///
/// Spectral coefficients approximate the whole-space transform,
/// `f^(xi_k) = dx^dim * sum_j f(x_j) exp(-i xi_k . x_j)`, so that the zero mode is
/// the integral of `f` and multiplier symbols apply without rescaling.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: GridSpec,
    samples: Samples,
}

impl Field {
    pub fn physical(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, samples: Samples::Physical(values) })
    }

    pub fn spectral(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, samples: Samples::Spectral(coeffs) })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self { grid, samples: Samples::Physical(vec![0.0; grid.len()]) }
    }

    /// Samples `f(x)` at the grid points.
    pub fn from_fn(grid: GridSpec, f: impl Fn([f64; 3]) -> f64) -> Self {
        Self { grid, samples: Samples::Physical(grid.sample(f)) }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn samples(&self) -> &Samples {
        &self.samples
    }

    pub fn is_spectral(&self) -> bool {
        matches!(self.samples, Samples::Spectral(_))
    }

    pub fn as_physical(&self) -> Result<&[f64]> {
        match &self.samples {
            Samples::Physical(v) => Ok(v),
            Samples::Spectral(_) => Err(Error::Representation { expected: "physical" }),
        }
    }

    pub fn as_spectral(&self) -> Result<&[Complex64]> {
        match &self.samples {
            Samples::Spectral(c) => Ok(c),
            Samples::Physical(_) => Err(Error::Representation { expected: "spectral" }),
        }
    }

    pub fn into_spectral_coeffs(self) -> Vec<Complex64> {
        match self.into_spectral().samples {
            Samples::Spectral(c) => c,
            Samples::Physical(_) => unreachable!(),
        }
    }

    pub fn into_physical_values(self) -> Vec<f64> {
        match self.into_physical().samples {
            Samples::Physical(v) => v,
            Samples::Spectral(_) => unreachable!(),
        }
    }

    /// Forward transform; a field already in spectral form is returned unchanged.
    pub fn to_spectral(&self) -> Field {
        self.clone().into_spectral()
    }

    pub fn into_spectral(self) -> Field {
        match self.samples {
            Samples::Spectral(_) => self,
            Samples::Physical(values) => {
                let coeffs = forward(&self.grid, &values);
                Field { grid: self.grid, samples: Samples::Spectral(coeffs) }
            }
        }
    }

    /// Inverse transform; the imaginary residue is dropped (see [`Field::imaginary_residual`]).
    pub fn to_physical(&self) -> Field {
        self.clone().into_physical()
    }

    pub fn into_physical(self) -> Field {
        match self.samples {
            Samples::Physical(_) => self,
            Samples::Spectral(coeffs) => {
                let values = inverse(&self.grid, coeffs).into_iter().map(|z| z.re).collect();
                Field { grid: self.grid, samples: Samples::Physical(values) }
            }
        }
    }

    /// Largest `|Im f(x_j)|` relative to `max |f(x_j)|` after inverting the spectrum.
    ///
    /// Zero for physical fields.
    pub fn imaginary_residual(&self) -> f64 {
        match &self.samples {
            Samples::Physical(_) => 0.0,
            Samples::Spectral(coeffs) => {
                let values = inverse(&self.grid, coeffs.clone());
                let max_abs = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
                if max_abs == 0.0 {
                    return 0.0;
                }
                values.iter().map(|z| z.im.abs()).fold(0.0, f64::max) / max_abs
            }
        }
    }

    /// Largest relative violation of `f^(-xi) = conj(f^(xi))`.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let coeffs = match &self.samples {
            Samples::Physical(_) => return 0.0,
            Samples::Spectral(c) => c,
        };
        let scale = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        (0..coeffs.len()).map(|i| (coeffs[self.grid.mirror(i)] - coeffs[i].conj()).norm()).fold(0.0, f64::max) / scale
    }

    /// Applies a spectral multiplier `m(xi)`; the field is transformed first if needed.
    pub fn apply_multiplier(&self, m: impl Fn([f64; 3]) -> Complex64) -> Field {
        let grid = self.grid;
        let mut coeffs = self.clone().into_spectral_coeffs();
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c *= m(grid.frequency(i));
        }
        Field { grid, samples: Samples::Spectral(coeffs) }
    }

    /// `a * self + b * other`, computed in the representation of `self`.
    pub fn axpby(&self, a: f64, other: &Field, b: f64) -> Result<Field> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let samples = match &self.samples {
            Samples::Physical(x) => {
                let y = other.clone().into_physical_values();
                Samples::Physical(x.iter().zip(&y).map(|(p, q)| a * p + b * q).collect())
            }
            Samples::Spectral(x) => {
                let y = other.clone().into_spectral_coeffs();
                Samples::Spectral(x.iter().zip(&y).map(|(p, q)| p * a + q * b).collect())
            }
        };
        Ok(Field { grid: self.grid, samples })
    }

    pub fn scale(&self, c: f64) -> Field {
        let samples = match &self.samples {
            Samples::Physical(x) => Samples::Physical(x.iter().map(|v| v * c).collect()),
            Samples::Spectral(x) => Samples::Spectral(x.iter().map(|v| v * c).collect()),
        };
        Field { grid: self.grid, samples }
    }
}

fn checkerboard(grid: &GridSpec, flat: usize) -> f64 {
    // exp(i xi_k L) = (-1)^k; N even so (-1)^k = (-1)^index
    let idx = grid.unflatten(flat);
    let parity: usize = idx.iter().take(grid.dim()).sum();
    if parity.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub(crate) fn forward(grid: &GridSpec, values: &[f64]) -> Vec<Complex64> {
    let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft::transform(&mut data, grid.points_per_axis(), grid.dim(), FftDirection::Forward);
    let weight = grid.cell_volume();
    for (i, c) in data.iter_mut().enumerate() {
        *c *= weight * checkerboard(grid, i);
    }
    data
}

pub(crate) fn inverse(grid: &GridSpec, mut coeffs: Vec<Complex64>) -> Vec<Complex64> {
    for (i, c) in coeffs.iter_mut().enumerate() {
        *c *= checkerboard(grid, i);
    }
    fft::transform(&mut coeffs, grid.points_per_axis(), grid.dim(), FftDirection::Inverse);
    let weight = (2.0 * grid.half_length()).powi(grid.dim() as i32).recip();
    for c in coeffs.iter_mut() {
        *c *= weight;
    }
    coeffs
}

/// Physical values of a spectral array, discarding the imaginary residue.
pub(crate) fn inverse_real(grid: &GridSpec, coeffs: &[Complex64]) -> Vec<f64> {
    inverse(grid, coeffs.to_vec()).into_iter().map(|z| z.re).collect()
}
