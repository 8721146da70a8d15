//! Exact per-mode evolution of `v_tt - Lap v + Lap^2 v + 2 mu Lap^2 v_t = 0` and the
//! diffusion-wave profiles of its large-time asymptotics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{boundary_mass, moment_m, sobolev_norm_coeffs, Field, GridSpec, NormSeries, RadialLattice};
use crate::symbols::{kernels, profile_g0_hat, profile_g1_hat, ModelParams};

/// Integrals of the data: `P_{v0}`, `P_{v1}` and `M_{v1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DataMoments {
    pub p_v0: f64,
    pub p_v1: f64,
    pub m_v1: [f64; 3],
}

/// Linear problem with data `(v0, v1)` and cached spectra.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    grid: GridSpec,
    params: ModelParams,
    v0_hat: Vec<Complex64>,
    v1_hat: Vec<Complex64>,
    lattice: RadialLattice,
    moments: DataMoments,
    boundary_tol: Option<f64>,
}

impl LinearSolution {
    pub fn new(params: ModelParams, v0: &Field, v1: &Field) -> Result<Self> {
        if v0.grid() != v1.grid() {
            return Err(Error::GridMismatch);
        }
        let grid = *v0.grid();
        let v1_phys = v1.to_physical();
        let v0_hat = v0.to_spectral().into_spectral_coeffs();
        let v1_hat = v1.to_spectral().into_spectral_coeffs();
        let moments = DataMoments { p_v0: v0_hat[0].re, p_v1: v1_hat[0].re, m_v1: moment_m(&v1_phys, false)? };
        Ok(Self { grid, params, v0_hat, v1_hat, lattice: RadialLattice::new(&grid), moments, boundary_tol: None })
    }

    /// Reports a [`Error::BoundaryMass`] whenever an evolved field exceeds `tol` in the
    /// boundary strip.
    pub fn with_boundary_check(mut self, tol: f64) -> Self {
        self.boundary_tol = Some(tol);
        self
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn moments(&self) -> DataMoments {
        self.moments
    }

    pub fn v0_hat(&self) -> &[Complex64] {
        &self.v0_hat
    }

    pub fn v1_hat(&self) -> &[Complex64] {
        &self.v1_hat
    }

    fn combine(&self, table: &[(f64, f64)]) -> Vec<Complex64> {
        (0..self.grid.len())
            .map(|i| {
                let (a, b) = table[self.lattice.shell(i)];
                self.v0_hat[i] * a + self.v1_hat[i] * b
            })
            .collect()
    }

    fn checked(&self, t: f64, coeffs: Vec<Complex64>) -> Result<Field> {
        let field = Field::spectral(self.grid, coeffs)?;
        if let Some(tol) = self.boundary_tol {
            let ratio = boundary_mass(&field);
            if ratio > tol {
                return Err(Error::BoundaryMass { t, ratio, tol });
            }
        }
        Ok(field)
    }

    /// `K0 v0^ + K1 v1^` as raw coefficients, without the boundary check.
    pub fn evolve_coeffs(&self, t: f64) -> Vec<Complex64> {
        let table = self.lattice.tabulate(|r| kernels(t, r, &self.params));
        self.combine(&table)
    }

    /// `dK0/dt v0^ + dK1/dt v1^` as raw coefficients.
    pub fn evolve_derivative_coeffs(&self, t: f64) -> Vec<Complex64> {
        let p = self.params;
        let table = self.lattice.tabulate(|r| {
            let (k0, k1) = kernels(t, r, &p);
            let b = ModelParams::stiffness(r);
            (-b * k1, k0 - p.damping(r) * k1)
        });
        self.combine(&table)
    }

    fn profile_v1_coeffs(&self, t: f64) -> Vec<Complex64> {
        let table = self.lattice.tabulate(|r| profile_g1_hat(t, r, &self.params));
        let p = self.moments.p_v1;
        (0..self.grid.len()).map(|i| Complex64::new(table[self.lattice.shell(i)] * p, 0.0)).collect()
    }

    fn profile_v2_coeffs(&self, t: f64) -> Vec<Complex64> {
        let params = self.params;
        let table = self.lattice.tabulate(|r| (profile_g0_hat(t, r, &params), profile_g1_hat(t, r, &params)));
        let DataMoments { p_v0, p_v1, m_v1 } = self.moments;
        (0..self.grid.len())
            .map(|i| {
                let shell = self.lattice.shell(i);
                let (g0, g1) = table[shell];
                let r = self.lattice.shell_radius(shell);
                let even = g0 * p_v0 - t / 8.0 * r.powi(4) * g0 * p_v1;
                let odd = if self.grid.is_nyquist(i) {
                    0.0
                } else {
                    let xi = self.grid.frequency(i);
                    g1 * (xi[0] * m_v1[0] + xi[1] * m_v1[1] + xi[2] * m_v1[2])
                };
                Complex64::new(even, -odd)
            })
            .collect()
    }
}

/// `v(t)` as a spectral field.
pub fn evolve_linear(sol: &LinearSolution, t: f64) -> Result<Field> {
    check_time(t)?;
    sol.checked(t, sol.evolve_coeffs(t))
}

/// `v_t(t)` as a spectral field.
pub fn evolve_time_derivative(sol: &LinearSolution, t: f64) -> Result<Field> {
    check_time(t)?;
    sol.checked(t, sol.evolve_derivative_coeffs(t))
}

/// `G1(t, |xi|) P_{v1}`.
pub fn profile_v1(sol: &LinearSolution, t: f64) -> Result<Field> {
    check_positive(t)?;
    Field::spectral(sol.grid, sol.profile_v1_coeffs(t))
}

/// `G0 P_{v0} - i G1 xi . M_{v1} - (t/8) |xi|^4 G0 P_{v1}`, with the odd term zeroed on
/// Nyquist modes.
pub fn profile_v2(sol: &LinearSolution, t: f64) -> Result<Field> {
    check_positive(t)?;
    Field::spectral(sol.grid, sol.profile_v2_coeffs(t))
}

/// Profiles removed from the solution by [`error_series`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subtract {
    V1,
    V1PlusV2,
}

/// `||v(t) - profiles(t)||_{Hdot^s}` at each time.
pub fn error_series(sol: &LinearSolution, s: f64, t_list: &[f64], subtract: Subtract) -> Result<NormSeries> {
    if !(s >= 0.0) {
        return Err(crate::error::invalid("Sobolev index must be non-negative"));
    }
    let label = match subtract {
        Subtract::V1 => format!("err1:s={s}"),
        Subtract::V1PlusV2 => format!("err2:s={s}"),
    };
    let mut series = NormSeries::new(label);
    for &t in t_list {
        check_positive(t)?;
        let v = evolve_linear(sol, t)?.into_spectral_coeffs();
        let p1 = sol.profile_v1_coeffs(t);
        let diff: Vec<Complex64> = match subtract {
            Subtract::V1 => v.iter().zip(&p1).map(|(a, b)| a - b).collect(),
            Subtract::V1PlusV2 => {
                let p2 = sol.profile_v2_coeffs(t);
                v.iter().zip(&p1).zip(&p2).map(|((a, b), c)| a - b - c).collect()
            }
        };
        series.push(t, sobolev_norm_coeffs(&sol.grid, &diff, s))?;
    }
    Ok(series)
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(crate::error::invalid(format!("time must be non-negative (got {t})")))
    }
}

fn check_positive(t: f64) -> Result<()> {
    if t > 0.0 {
        Ok(())
    } else {
        Err(crate::error::invalid(format!("time must be positive (got {t})")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{mode_ode_trajectory, OdeTolerance};
    use crate::spectral::sobolev_norm;
    use crate::symbols::kernel_k1_hat;
    use std::f64::consts::PI;

    fn params() -> ModelParams {
        ModelParams::new(0.5).unwrap()
    }

    fn gaussian(grid: GridSpec, a: f64, shift: f64) -> Field {
        Field::from_fn(grid, |x| a * (-((x[0] - shift).powi(2) + x[1] * x[1] + x[2] * x[2])).exp())
    }

    #[test]
    fn initial_time_returns_data() {
        let g = GridSpec::new(2, 32, 8.0).unwrap();
        let v0 = gaussian(g, 1.0, 0.5);
        let v1 = gaussian(g, -2.0, -1.0);
        let sol = LinearSolution::new(params(), &v0, &v1).unwrap();
        let a = evolve_linear(&sol, 0.0).unwrap().into_physical_values();
        let b = evolve_time_derivative(&sol, 0.0).unwrap().into_physical_values();
        let (x0, x1) = (v0.as_physical().unwrap(), v1.as_physical().unwrap());
        for i in 0..g.len() {
            assert!((a[i] - x0[i]).abs() < 1e-12);
            assert!((b[i] - x1[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn single_mode_matches_ode() {
        let l = 5.0;
        let g = GridSpec::new(1, 16, l).unwrap();
        let v0 = Field::zeros(g);
        let v1 = Field::from_fn(g, |x| (PI * x[0] / l).cos());
        let sol = LinearSolution::new(params(), &v0, &v1).unwrap();
        let r = PI / l;
        let traj = mode_ode_trajectory(
            params().damping(r),
            ModelParams::stiffness(r),
            [0.0, 1.0],
            &[2.0],
            OdeTolerance::default(),
        )
        .unwrap();
        let v = evolve_linear(&sol, 2.0).unwrap();
        let c = v.as_spectral().unwrap();
        assert!((c[1].re - l * traj[0][0]).abs() < 1e-9 * l);
        assert!((c[1].re - l * kernel_k1_hat(2.0, r, &params())).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let g = GridSpec::new(1, 64, 10.0).unwrap();
        let sol = LinearSolution::new(params(), &gaussian(g, 1.0, 0.0), &gaussian(g, 0.5, 1.0)).unwrap();
        let t = 1.5;
        let d = evolve_time_derivative(&sol, t).unwrap().into_spectral_coeffs();
        let mut prev = f64::INFINITY;
        for h in [1e-2, 5e-3] {
            let a = sol.evolve_coeffs(t + h);
            let b = sol.evolve_coeffs(t - h);
            let err = (0..g.len()).map(|i| ((a[i] - b[i]) / (2.0 * h) - d[i]).norm()).fold(0.0, f64::max);
            assert!(err < prev / 3.5 || prev.is_infinite());
            prev = err;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn zero_mode_law_and_profiles() {
        let g = GridSpec::new(2, 32, 8.0).unwrap();
        let sol = LinearSolution::new(params(), &gaussian(g, 1.0, 0.3), &gaussian(g, 0.7, -0.4)).unwrap();
        let m = sol.moments();
        for t in [0.5, 3.0, 20.0] {
            let v = evolve_linear(&sol, t).unwrap();
            let z = v.as_spectral().unwrap()[0];
            assert!((z.re - (m.p_v0 + t * m.p_v1)).abs() < 1e-12 * (1.0 + z.re.abs()));
            let p1 = profile_v1(&sol, t).unwrap();
            assert!((p1.as_spectral().unwrap()[0].re - t * m.p_v1).abs() < 1e-12);
            let p2 = profile_v2(&sol, t).unwrap();
            assert!((p2.as_spectral().unwrap()[0].re - m.p_v0).abs() < 1e-12);
            assert!(p2.conjugate_symmetry_defect() < 1e-12);
            assert!(p2.imaginary_residual() < 1e-12);
        }
    }

    #[test]
    fn vanishing_data_give_zero_profiles_and_series() {
        let g = GridSpec::new(1, 64, 10.0).unwrap();
        let even = Field::from_fn(g, |x| (1.0 - 2.0 * x[0] * x[0]) * (-x[0] * x[0]).exp());
        let sol = LinearSolution::new(params(), &Field::zeros(g), &even).unwrap();
        assert!(sol.moments().p_v1.abs() < 1e-12);
        let p2 = profile_v2(&sol, 2.0).unwrap();
        assert!(sobolev_norm(&p2, 0.0).unwrap() < 1e-10);
        let zero = LinearSolution::new(params(), &Field::zeros(g), &Field::zeros(g)).unwrap();
        let s = error_series(&zero, 1.0, &[1.0, 2.0], Subtract::V1PlusV2).unwrap();
        assert!(s.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn boundary_check_reports_wide_fields() {
        let l = 5.0;
        let g = GridSpec::new(1, 16, l).unwrap();
        let v1 = Field::from_fn(g, |x| (PI * x[0] / l).cos());
        let sol = LinearSolution::new(params(), &Field::zeros(g), &v1).unwrap().with_boundary_check(1e-8);
        assert!(matches!(evolve_linear(&sol, 1.0), Err(Error::BoundaryMass { .. })));
    }
}
