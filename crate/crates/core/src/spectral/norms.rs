//! Sobolev and Lebesgue norms, moments, and the boundary-mass diagnostic.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::spectral::{Field, GridSpec};

/// Relative tail allowed at the box edge before moments are considered truncated.
pub const MOMENT_TAIL_TOL: f64 = 1e-10;

/// Fraction of the half-length treated as the boundary strip by [`boundary_mass`].
pub const BOUNDARY_STRIP: f64 = 1.0 / 16.0;

/// Homogeneous Sobolev norm `||f||_{H^s-dot}` by Plancherel on the lattice.
///
/// `s = 0` gives the L2 norm.
pub fn sobolev_norm(f: &Field, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(invalid(format!("Sobolev index must be non-negative (got {s})")));
    }
    let grid = *f.grid();
    let spectral;
    let coeffs = if f.is_spectral() {
        f.as_spectral()?
    } else {
        spectral = f.to_spectral();
        spectral.as_spectral()?
    };
    Ok(sobolev_norm_coeffs(&grid, coeffs, s))
}

pub(crate) fn sobolev_norm_coeffs(grid: &GridSpec, coeffs: &[num_complex::Complex64], s: f64) -> f64 {
    let mut acc = 0.0;
    for (i, c) in coeffs.iter().enumerate() {
        let weight = if s == 0.0 {
            1.0
        } else {
            let r = grid.frequency_magnitude(i);
            if r == 0.0 {
                0.0
            } else {
                r.powf(2.0 * s)
            }
        };
        acc += weight * c.norm_sqr();
    }
    let dim = grid.dim() as i32;
    (acc * grid.frequency_cell() / (2.0 * PI).powi(dim)).sqrt()
}

/// Rectangle-rule `L^q` norm; `q = f64::INFINITY` gives the max norm.
pub fn lebesgue_norm(f: &Field, q: f64) -> Result<f64> {
    if !(q >= 1.0) {
        return Err(invalid(format!("Lebesgue exponent must be >= 1 (got {q})")));
    }
    let physical;
    let values = if f.is_spectral() {
        physical = f.to_physical();
        physical.as_physical()?
    } else {
        f.as_physical()?
    };
    Ok(lebesgue_norm_values(f.grid(), values, q))
}

pub(crate) fn lebesgue_norm_values(grid: &GridSpec, values: &[f64], q: f64) -> f64 {
    if q.is_infinite() {
        return values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    }
    let sum: f64 = values.iter().map(|v| v.abs().powf(q)).sum();
    (sum * grid.cell_volume()).powf(1.0 / q)
}

/// `max |f|` over the outermost grid layer relative to `max |f|`.
pub fn edge_tail(f: &Field) -> Result<f64> {
    let values = f.as_physical()?;
    let grid = f.grid();
    let n = grid.points_per_axis();
    let max = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(0.0);
    }
    let edge = values
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let idx = grid.unflatten(*i);
            idx.iter().take(grid.dim()).any(|&j| j == 0 || j == n - 1)
        })
        .map(|(_, v)| v.abs())
        .fold(0.0, f64::max);
    Ok(edge / max)
}

/// `max |f|` over the boundary strip (width `BOUNDARY_STRIP * L`) relative to `max |f|`.
pub fn boundary_mass(f: &Field) -> f64 {
    let physical;
    let values = if f.is_spectral() {
        physical = f.to_physical();
        physical.as_physical().expect("physical")
    } else {
        f.as_physical().expect("physical")
    };
    boundary_mass_values(f.grid(), values)
}

pub(crate) fn boundary_mass_values(grid: &GridSpec, values: &[f64]) -> f64 {
    let width = BOUNDARY_STRIP * grid.half_length();
    let mut max = 0.0f64;
    let mut edge = 0.0f64;
    for (i, v) in values.iter().enumerate() {
        let a = v.abs();
        max = max.max(a);
        if grid.is_boundary(i, width) {
            edge = edge.max(a);
        }
    }
    if max == 0.0 {
        0.0
    } else {
        edge / max
    }
}

fn check_tail(f: &Field, strict: bool) -> Result<()> {
    let tail = edge_tail(f)?;
    if tail > MOMENT_TAIL_TOL {
        if strict {
            return Err(Error::BoundaryMass { t: f64::NAN, ratio: tail, tol: MOMENT_TAIL_TOL });
        }
        log::warn!("moment of a field with boundary tail {tail:.3e}; the box may truncate it");
    }
    Ok(())
}

/// `P_f`, the integral of `f`; equals the zero spectral coefficient.
pub fn moment_p(f: &Field, strict: bool) -> Result<f64> {
    check_tail(f, strict)?;
    let values = f.as_physical()?;
    Ok(values.iter().sum::<f64>() * f.grid().cell_volume())
}

/// `M_f`, the first moment `int x f(x) dx`; unused trailing components are zero.
pub fn moment_m(f: &Field, strict: bool) -> Result<[f64; 3]> {
    check_tail(f, strict)?;
    let grid = f.grid();
    let values = f.as_physical()?;
    let mut m = [0.0; 3];
    for (i, v) in values.iter().enumerate() {
        let x = grid.position(i);
        for axis in 0..grid.dim() {
            m[axis] += x[axis] * v;
        }
    }
    let w = grid.cell_volume();
    Ok(m.map(|c| c * w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_1d(l: f64, n: usize) -> Field {
        Field::from_fn(GridSpec::new(1, n, l).unwrap(), |x| (-x[0] * x[0]).exp())
    }

    #[test]
    fn single_mode_norms() {
        let l = 4.0;
        let g = GridSpec::new(1, 32, l).unwrap();
        let f = Field::from_fn(g, |x| (PI * x[0] / l).cos());
        assert!((sobolev_norm(&f, 0.0).unwrap() - l.sqrt()).abs() < 1e-12);
        assert!((sobolev_norm(&f, 1.0).unwrap() - PI / l * l.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gaussian_l2_norm() {
        let f = gaussian_1d(40.0, 1024);
        let expected = (PI / 2.0).powf(0.25);
        assert!((sobolev_norm(&f, 0.0).unwrap() - expected).abs() < 1e-8);
    }

    #[test]
    fn lebesgue_norms() {
        let g = GridSpec::new(1, 16, 2.0).unwrap();
        let one = Field::from_fn(g, |_| 1.0);
        assert!((lebesgue_norm(&one, 1.0).unwrap() - 4.0).abs() < 1e-12);
        let c = Field::from_fn(g, |_| -2.5);
        assert_eq!(lebesgue_norm(&c, f64::INFINITY).unwrap(), 2.5);
        // (int exp(-6x^2) dx)^(1/6) = (pi/6)^(1/12)
        let f = gaussian_1d(40.0, 1024);
        let expected = (PI / 6.0).powf(1.0 / 12.0);
        assert!((lebesgue_norm(&f, 6.0).unwrap() - expected).abs() < 1e-8);
        assert!(lebesgue_norm(&f, 0.5).is_err());
        assert!(sobolev_norm(&f, -1.0).is_err());
    }

    #[test]
    fn moments_of_gaussians() {
        let f = gaussian_1d(20.0, 512);
        assert!((moment_p(&f, true).unwrap() - PI.sqrt()).abs() < 1e-10);
        assert!(moment_m(&f, true).unwrap()[0].abs() < 1e-12);
        let odd = Field::from_fn(*f.grid(), |x| x[0] * (-x[0] * x[0]).exp());
        assert!(moment_p(&odd, true).unwrap().abs() < 1e-12);
        let shifted = Field::from_fn(*f.grid(), |x| (-(x[0] - 1.0).powi(2)).exp());
        assert!((moment_m(&shifted, true).unwrap()[0] - PI.sqrt()).abs() < 1e-8);

        let g2 = GridSpec::new(2, 128, 10.0).unwrap();
        let f2 = Field::from_fn(g2, |x| (-(x[0] * x[0] + x[1] * x[1])).exp());
        assert!((moment_p(&f2, true).unwrap() - PI).abs() < 1e-8);
        let h2 = Field::from_fn(g2, |x| x[0] * (-(x[0] * x[0] + x[1] * x[1])).exp());
        let m = moment_m(&h2, true).unwrap();
        assert!((m[0] - PI / 2.0).abs() < 1e-8);
        assert!(m[1].abs() < 1e-12);
    }

    #[test]
    fn strict_mode_rejects_truncated_data() {
        let f = gaussian_1d(2.0, 64);
        assert!(moment_p(&f, true).is_err());
        assert!(moment_p(&f, false).is_ok());
    }

    #[test]
    fn moment_p_is_zero_mode() {
        let f =
            Field::from_fn(GridSpec::new(2, 32, 6.0).unwrap(), |x| (-(x[0] - 0.3).powi(2) - 2.0 * x[1] * x[1]).exp());
        let p = moment_p(&f, true).unwrap();
        let c0 = f.to_spectral().as_spectral().unwrap()[0];
        assert!((p - c0.re).abs() <= 1e-12 * p.abs());
    }
}
