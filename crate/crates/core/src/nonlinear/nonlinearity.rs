use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::spectral::{forward, Field, GridSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NonlinearForm {
    /// `|u|^p`
    Modulus,
    /// `|u|^{p-1} u`
    Signed,
}

/// `f(u) = scale * sign * |u|^p` or `scale * sign * |u|^{p-1} u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlinearitySpec {
    pub p: f64,
    pub form: NonlinearForm,
    pub sign: f64,
    /// Overall coefficient; `0` switches the nonlinearity off.
    #[serde(default = "one")]
    pub scale: f64,
}

fn one() -> f64 {
    1.0
}

impl NonlinearitySpec {
    pub fn new(p: f64, form: NonlinearForm, sign: f64) -> Result<Self> {
        let spec = Self { p, form, sign, scale: 1.0 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 1.0) {
            return Err(invalid(format!("nonlinearity exponent must exceed 1 (got {})", self.p)));
        }
        if self.sign != 1.0 && self.sign != -1.0 {
            return Err(invalid(format!("nonlinearity sign must be +1 or -1 (got {})", self.sign)));
        }
        if !self.scale.is_finite() {
            return Err(invalid("nonlinearity scale must be finite"));
        }
        Ok(())
    }

    pub fn is_active(&self) -> bool {
        self.scale != 0.0
    }

    /// Pointwise value `f(u)`.
    pub fn eval(&self, u: f64) -> f64 {
        let a = u.abs();
        let integral = self.p.fract() == 0.0 && self.p < 64.0;
        let coeff = self.scale * self.sign;
        match self.form {
            NonlinearForm::Modulus => coeff * if integral { a.powi(self.p as i32) } else { a.powf(self.p) },
            NonlinearForm::Signed => {
                let m = if integral { a.powi(self.p as i32 - 1) } else { a.powf(self.p - 1.0) };
                coeff * m * u
            }
        }
    }
}

/// Dealiasing mask: `true` for modes kept by the 2/3 rule.
pub(crate) fn dealias_mask(grid: &GridSpec) -> Vec<bool> {
    (0..grid.len()).map(|i| !grid.is_aliased(i)).collect()
}

/// Spectrum of `f(u)` from physical samples, dealiased.
pub(crate) fn nonlinear_coeffs(
    grid: &GridSpec,
    values: &[f64],
    spec: &NonlinearitySpec,
    keep: &[bool],
) -> Result<Vec<Complex64>> {
    let f: Vec<f64> = values.iter().map(|&u| spec.eval(u)).collect();
    if let Some(bad) = f.iter().position(|v| !v.is_finite()) {
        return Err(Error::BlowUp {
            t: f64::NAN,
            reason: format!("non-finite nonlinearity at grid point {bad} (u = {})", values[bad]),
        });
    }
    let mut coeffs = forward(grid, &f);
    for (c, &k) in coeffs.iter_mut().zip(keep) {
        if !k {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    Ok(coeffs)
}

/// `f(u)` evaluated in physical space, transformed and dealiased.
pub fn apply_nonlinearity(u: &Field, spec: &NonlinearitySpec) -> Result<Field> {
    spec.validate()?;
    let grid = *u.grid();
    let values = u.to_physical().into_physical_values();
    let coeffs = nonlinear_coeffs(&grid, &values, spec, &dealias_mask(&grid))?;
    Field::spectral(grid, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_and_constant_fields() {
        let g = GridSpec::new(1, 16, PI).unwrap();
        let spec = NonlinearitySpec::new(4.0, NonlinearForm::Signed, 1.0).unwrap();
        let z = apply_nonlinearity(&Field::zeros(g), &spec).unwrap();
        assert!(z.as_spectral().unwrap().iter().all(|c| c.norm() == 0.0));
        let c = -0.7f64;
        let out = apply_nonlinearity(&Field::from_fn(g, |_| c), &spec).unwrap().into_physical_values();
        assert!(out.iter().all(|v| (v - c.abs().powi(3) * c).abs() < 1e-14));
    }

    #[test]
    fn cosine_squared_has_modes_zero_and_two() {
        let g = GridSpec::new(1, 32, PI).unwrap();
        let spec = NonlinearitySpec::new(2.0, NonlinearForm::Modulus, 1.0).unwrap();
        let out = apply_nonlinearity(&Field::from_fn(g, |x| x[0].cos()), &spec).unwrap();
        for (i, c) in out.as_spectral().unwrap().iter().enumerate() {
            let k = g.wavenumber(i).abs();
            // continuous-scaling coefficients: the constant 1/2 maps to (1/2) 2 pi, cos 2x to pi/2 each
            let expect = match k {
                0 => PI,
                2 => 0.5 * PI,
                _ => 0.0,
            };
            assert!((c.re - expect).abs() < 1e-12 && c.im.abs() < 1e-12, "k={k}: {c}");
        }
    }

    #[test]
    fn rejects_bad_specs_and_reports_overflow() {
        assert!(NonlinearitySpec::new(1.0, NonlinearForm::Signed, 1.0).is_err());
        assert!(NonlinearitySpec::new(3.0, NonlinearForm::Signed, 0.5).is_err());
        let g = GridSpec::new(1, 8, 1.0).unwrap();
        let spec = NonlinearitySpec::new(3.0, NonlinearForm::Signed, 1.0).unwrap();
        let big = Field::from_fn(g, |_| 1e200);
        assert!(matches!(apply_nonlinearity(&big, &spec), Err(Error::BlowUp { .. })));
    }
}
