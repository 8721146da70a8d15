//! Scenarios that only evaluate symbols and oracle integrals.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_complex::Complex64;

use super::linear_runs::{zero_mode_defect, ZERO_MODE_ANCHOR, ZERO_MODE_TOL};
use super::report::{Expectation, Report};
use super::{Overrides, ScenarioId};
use crate::error::Result;
use crate::linear::LinearSolution;
use crate::oracle::{fit_rate, mode_ode_trajectory, multiplier_norm_radial, FitMode, MultiplierSymbol, OdeTolerance};
use crate::sampling::{lin_spaced, log_spaced};
use crate::spectral::{Field, GridSpec, NormSeries, RadialLattice};
use crate::symbols::{
    char_roots, degenerate_radius, error_kernel_ratios, expansion_remainder, refinement_study, ErrorBound, ModelParams,
};

pub(super) fn params(o: &Overrides) -> Result<ModelParams> {
    ModelParams::new(o.mu.unwrap_or(0.5))
}

/// `max / min` of the values.
fn spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    max / min
}

pub(super) fn mode_exactness(o: &Overrides) -> Result<Report> {
    let id = ScenarioId::ModeExactness;
    let mut report = Report::new(id.id(), id.anchor());
    let p = params(o)?;
    let n = o.n.unwrap_or(1);
    let points = o.points.unwrap_or(if n == 1 { 256 } else { 32 });
    let half_length = o.half_length.unwrap_or(64.0);
    let grid = GridSpec::new(n, points, half_length)?;
    let times = [0.1, 1.0, 10.0];
    report.param("n", n);
    report.param("N", points);
    report.param("L", half_length);
    report.param("mu", p.mu());
    report.param("t", times);

    let v0 = Field::from_fn(grid, |x| (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp());
    let v1 = Field::from_fn(grid, |x| 0.5 * (-((x[0] - 0.5).powi(2) + x[1] * x[1] + x[2] * x[2]) / 2.25).exp());
    let sol = LinearSolution::new(p, &v0, &v1)?;
    let lattice = RadialLattice::new(&grid);
    let tol = OdeTolerance { rel: 1e-12, abs: 1e-300, ..OdeTolerance::default() };
    // per-shell ODE solutions for data (1, 0) and (0, 1)
    let mut basis = BTreeMap::new();
    for i in 0..grid.len() {
        let shell = lattice.shell(i);
        if let Entry::Vacant(slot) = basis.entry(shell) {
            let r = lattice.shell_radius(shell);
            let (a, b) = (p.damping(r), ModelParams::stiffness(r));
            let k0 = mode_ode_trajectory(a, b, [1.0, 0.0], &times, tol)?;
            let k1 = mode_ode_trajectory(a, b, [0.0, 1.0], &times, tol)?;
            slot.insert((k0, k1));
        }
    }
    let mut worst = 0.0f64;
    let mut worst_zero = 0.0f64;
    let mut series = NormSeries::new("max_mode_error");
    for (ti, &t) in times.iter().enumerate() {
        let coeffs = sol.evolve_coeffs(t);
        worst_zero = worst_zero.max(zero_mode_defect(&sol, coeffs[0].re, t));
        let mut worst_t = 0.0f64;
        for (i, c) in coeffs.iter().enumerate() {
            let (k0, k1) = &basis[&lattice.shell(i)];
            let (a, b) = (k0[ti][0], k1[ti][0]);
            let oracle: Complex64 = sol.v0_hat()[i] * a + sol.v1_hat()[i] * b;
            let scale = sol.v0_hat()[i].norm() * a.abs() + sol.v1_hat()[i].norm() * b.abs();
            if scale > 0.0 {
                worst_t = worst_t.max((c - oracle).norm() / scale);
            }
        }
        series.push(t, worst_t)?;
        worst = worst.max(worst_t);
    }
    report.note(format!("{} radial shells solved by DOPRI5 (rtol 1e-12)", basis.len()));
    report.expect(Expectation::below(
        "max relative mode deviation",
        worst,
        1e-9,
        "each Fourier mode solves w'' + 2 mu r^4 w' + (r^2 + r^4) w = 0",
    ));
    report.expect(Expectation::below("zero-mode residual", worst_zero, ZERO_MODE_TOL, ZERO_MODE_ANCHOR));
    report.series.push(series);
    Ok(report)
}

pub(super) fn expansion_orders(o: &Overrides) -> Result<Report> {
    let id = ScenarioId::ExpansionOrders;
    let mut report = Report::new(id.id(), id.anchor());
    let p = params(o)?;
    report.param("mu", p.mu());
    let radii = log_spaced(1e-3, 0.3, 60);
    report.param("r_range", [1e-3, 0.3]);
    for (order, power) in [(1u32, 3), (3, 5), (5, 7)] {
        let ratios: Vec<f64> = radii
            .iter()
            .map(|&r| Ok(expansion_remainder(r, &p, order)?.abs() / r.powi(power)))
            .collect::<Result<_>>()?;
        let max = ratios.iter().cloned().fold(0.0, f64::max);
        let quantity = format!("order-{order} remainder / r^{power} spread");
        let anchor = format!("Im lambda - (order-{order} expansion) = O(r^{power})");
        let finite = ratios.iter().all(|v| v.is_finite() && *v > 0.0);
        report.expect(Expectation::holds(
            format!("order-{order} remainder finite"),
            finite && max.is_finite(),
            &anchor,
        ));
        if finite {
            report.expect(Expectation::below(quantity, spread(&ratios), 10.0, &anchor));
            report.series.push(NormSeries::from_parts(format!("remainder{order}/r^{power}"), radii.clone(), ratios)?);
        }
        report.param(&format!("order{order}_bound"), max);
    }

    // large-frequency zone: lambda_+ + 1/(2 mu) = O(r^-2), lambda_- + 2 mu r^4 - 1/(2 mu) = O(r^-2)
    let r_deg = degenerate_radius(&p);
    let large = log_spaced(2.0 * r_deg, 30.0 * r_deg.max(1.0), 40);
    let slow: Vec<f64> =
        large.iter().map(|&r| (char_roots(r, &p).lambda_plus.re + 0.5 / p.mu()).abs() * r * r).collect();
    let fast: Vec<f64> = large
        .iter()
        .map(|&r| {
            let lm = char_roots(r, &p).lambda_minus.re;
            (lm + 2.0 * p.mu() * r.powi(4) - 0.5 / p.mu()).abs() * r * r
        })
        .collect();
    report.param("large_r_range", [large[0], large[large.len() - 1]]);
    report.expect(Expectation::below(
        "(lambda+ + 1/(2 mu)) r^2 spread",
        spread(&slow),
        10.0,
        "lambda+ = -1/(2 mu) + O(r^-2) as r -> inf",
    ));
    report.expect(Expectation::below(
        "(lambda- + 2 mu r^4 - 1/(2 mu)) r^2 spread",
        spread(&fast),
        10.0,
        "lambda- = -2 mu r^4 + 1/(2 mu) + O(r^-2) as r -> inf",
    ));
    Ok(report)
}

pub(super) fn error_kernels(o: &Overrides) -> Result<Report> {
    let id = ScenarioId::ErrorKernels;
    let mut report = Report::new(id.id(), id.anchor());
    let p = params(o)?;
    let (nt, nr) = (161, 101);
    let t_range = (1.0, 1e4);
    let r_range = (0.0, 0.5);
    report.param("mu", p.mu());
    report.param("c", 0.5 * p.mu());
    report.param("t_range", t_range);
    report.param("r_range", r_range);
    report.param("grid", [nt, nr]);
    let study = refinement_study(&p, t_range, r_range, nt, nr)?;
    for (i, bound) in ErrorBound::ALL.iter().enumerate() {
        report.param(&format!("C[{}]", bound.id()), study.fine.constants[i]);
        report.param(&format!("argmax[{}]", bound.id()), study.fine.argmax[i]);
        let anchor = match bound {
            ErrorBound::K1 => "|K1 - G1| <= C e^{-c r^4 t}",
            ErrorBound::K0 => "|K0 - G0| <= C r e^{-c r^4 t}",
            ErrorBound::K1Refined => "|K1 - G1 + (t/8) r^4 G0| <= C r e^{-c r^4 t}",
        };
        report.expect(Expectation::holds(
            format!("{} constant finite", bound.id()),
            study.coarse.finite && study.fine.finite && study.fine.constants[i].is_finite(),
            anchor,
        ));
        report.expect(Expectation::below(
            format!("{} constant change under refinement", bound.id()),
            study.relative_change[i],
            0.05,
            anchor,
        ));
    }
    // sup over r of each ratio, on the coarse t grid
    let radii = lin_spaced(r_range.0, r_range.1, nr);
    let times = log_spaced(t_range.0, t_range.1, nt);
    let mut sups = [Vec::new(), Vec::new(), Vec::new()];
    for &t in &times {
        let mut row = [0.0f64; 3];
        for &r in &radii {
            let v = error_kernel_ratios(t, r, &p);
            for i in 0..3 {
                row[i] = row[i].max(v[i]);
            }
        }
        for i in 0..3 {
            sups[i].push(row[i]);
        }
    }
    for (bound, values) in ErrorBound::ALL.iter().zip(sups) {
        report.series.push(NormSeries::from_parts(format!("sup_r:{}", bound.id()), times.clone(), values)?);
    }
    Ok(report)
}

/// Fit window and sample count used for oracle multiplier norms.
const ORACLE_WINDOW: (f64, f64) = (1e2, 1e6);
const ORACLE_SAMPLES: usize = 50;

fn oracle_series(symbol: MultiplierSymbol, s: f64, n: usize, times: &[f64], p: &ModelParams) -> Result<NormSeries> {
    let label = format!("{}:n={n}:s={s}", serde_json::to_value(symbol)?.as_str().unwrap_or("?"));
    let values = times.iter().map(|&t| multiplier_norm_radial(symbol, s, n, t, p)).collect::<Result<Vec<_>>>()?;
    NormSeries::from_parts(label, times.to_vec(), values)
}

pub(super) fn multiplier_norms(o: &Overrides) -> Result<Report> {
    let id = ScenarioId::MultiplierNorms;
    let mut report = Report::new(id.id(), id.anchor());
    let p = params(o)?;
    let times = log_spaced(ORACLE_WINDOW.0, ORACLE_WINDOW.1, ORACLE_SAMPLES);
    report.param("mu", p.mu());
    report.param("window", ORACLE_WINDOW);
    report.param("samples", ORACLE_SAMPLES);
    let dims: Vec<usize> = o.n.map(|n| vec![n]).unwrap_or_else(|| vec![1, 2, 3]);
    let indices: Vec<f64> = o.s.map(|s| vec![s]).unwrap_or_else(|| vec![0.0, 1.0, 2.0]);
    for &n in &dims {
        for &s in &indices {
            let series = oracle_series(MultiplierSymbol::G0, s, n, &times, &p)?;
            let fit = fit_rate(&series, None, FitMode::PowerLaw)?;
            let target = -(2.0 * s + n as f64) / 8.0;
            report.expect(Expectation::within(
                format!("G0 Hdot^{s} slope n={n}"),
                fit.slope,
                target,
                0.02,
                "||G0(t)||_{Hdot^s} ~ t^{-(2s+n)/8}",
            ));
            report.series.push(series);
        }
    }
    for &n in &dims {
        let series = oracle_series(MultiplierSymbol::G1, 0.0, n, &times, &p)?;
        if n == 2 {
            let fit = fit_rate(&series, Some((1e4, 1e6)), FitMode::LogGrowth)?;
            report.expect(Expectation::below(
                "G1 L2^2 / ln t drift n=2",
                fit.drift.unwrap_or(f64::INFINITY),
                0.05,
                "||G1(t)||_{L2} ~ sqrt(ln t) for n = 2",
            ));
        } else {
            let fit = fit_rate(&series, None, FitMode::PowerLaw)?;
            let target = if n == 1 { 0.5 } else { -(n as f64 - 2.0) / 8.0 };
            report.expect(Expectation::within(
                format!("G1 L2 slope n={n}"),
                fit.slope,
                target,
                0.02,
                "||G1(t)||_{L2} ~ D_n(t): sqrt(t) for n = 1, t^{-(n-2)/8} for n >= 3",
            ));
        }
        report.series.push(series);
    }
    Ok(report)
}
