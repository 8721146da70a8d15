//! Scenarios built on the nonlinear integrator.

use super::linear_runs::{ZERO_MODE_ANCHOR, ZERO_MODE_TOL};
use super::report::{Expectation, Report};
use super::{Overrides, ScenarioId};
use crate::error::Result;
use crate::nonlinear::{run_simulation, DataPreset, NonlinearForm, OutputSchedule, SimConfig, SimulationOutput};
use crate::oracle::{fit_rate, is_decreasing_from, relative_drift, FitMode};
use crate::spectral::{sobolev_norm_coeffs, NormSeries};

/// Small-data run: `n = 2`, `p = 5`, signed form, Gaussian `u1`, `u0 = 0`.
pub(super) fn small_data_config(o: &Overrides) -> SimConfig {
    SimConfig {
        dim: o.n.unwrap_or(2),
        points: o.points.unwrap_or(512),
        half_length: o.half_length.unwrap_or(384.0),
        mu: o.mu.unwrap_or(0.5),
        p: o.p.unwrap_or(5.0),
        form: NonlinearForm::Signed,
        sign: 1.0,
        scale: 1.0,
        dt: o.dt.unwrap_or(0.1),
        t_end: o.t_end.unwrap_or(200.0),
        sobolev: vec![1.0],
        strict: o.strict,
        seed: o.seed.unwrap_or(0),
        snapshot_every: 0,
        boundary_tol: Some(1e-8),
        step_tol: crate::nonlinear::DEFAULT_STEP_TOL,
        data: DataPreset::gaussian(0.0, SMALL_DATA_AMPLITUDE, 1.5, 0.0),
        output: OutputSchedule::Log { count: 48, t_min: 4.0 },
    }
}

const SMALL_DATA_AMPLITUDE: f64 = 0.15;
const LINF_LIMIT: f64 = 0.1;

fn describe(report: &mut Report, cfg: &SimConfig) {
    report.param("config", cfg);
    report.note("nonlinearity f(u) = +|u|^{p-1} u (signed form, sign +1)");
}

fn common_expectations(report: &mut Report, out: &SimulationOutput) {
    report.param("summary", out.summary);
    report.expect(Expectation::below(
        "zero-mode residual",
        out.summary.max_zero_mode_residual,
        ZERO_MODE_TOL,
        ZERO_MODE_ANCHOR,
    ));
}

/// `(t_end / 10, t_end)`.
fn final_window(cfg: &SimConfig) -> (f64, f64) {
    (cfg.t_end / 10.0, cfg.t_end)
}

pub(super) fn nonlinear_decay(o: &Overrides) -> Result<Report> {
    let id = ScenarioId::NonlinearDecay;
    let mut report = Report::new(id.id(), id.anchor());
    let cfg = small_data_config(o);
    describe(&mut report, &cfg);
    let out = run_simulation(&cfg)?;
    common_expectations(&mut report, &out);
    let n = cfg.dim as f64;
    let window = final_window(&cfg);
    report.param("window", window);
    report.expect(Expectation::below(
        "max ||u||_Linf",
        out.summary.max_abs,
        LINF_LIMIT,
        "small data keeps the solution in the perturbative regime",
    ));
    if let Some(h1) = out.series("Hdot:s=1") {
        let fit = fit_rate(h1, Some(window), FitMode::PowerLaw)?;
        report.expect(Expectation::within(
            "||u||_Hdot^1 slope",
            fit.slope,
            -n / 8.0,
            0.07,
            "||u(t)||_{Hdot^s} ~ t^{-(2s+n-2)/8}",
        ));
    }
    if let Some(l2) = out.series("L2") {
        if cfg.dim == 2 {
            let drift = relative_drift(&l2.window(window.0, window.1), |t| 1.0 / t.ln().sqrt())?;
            report.expect(Expectation::below(
                "||u||_L2 / sqrt(ln t) drift",
                drift,
                0.15,
                "||u(t)||_{L2} ~ sqrt(ln t) for n = 2",
            ));
        }
    }
    report.series = out.series;
    Ok(report)
}

pub(super) fn nonlinear_profile(o: &Overrides) -> Result<Report> {
    let id = ScenarioId::NonlinearProfile;
    let mut report = Report::new(id.id(), id.anchor());
    let cfg = small_data_config(o);
    describe(&mut report, &cfg);
    let out = run_simulation(&cfg)?;
    common_expectations(&mut report, &out);
    let n = cfg.dim as f64;
    let window = final_window(&cfg);
    report.param("window", window);
    if let Some(err) = out.series("profile_err:s=1") {
        let k = n / 8.0;
        report.expect(Expectation::holds(
            format!("||u - G1 P_u1||_Hdot^1 t^{k} decreasing over the final decade"),
            is_decreasing_from(err, window.0, |t| t.powf(k)),
            "||u(t) - G1(t) P_u1||_{Hdot^s} = o(t^{-(2s+n-2)/8})",
        ));
    }
    report.series = out.series;
    Ok(report)
}

pub(super) fn self_convergence(o: &Overrides) -> Result<Report> {
    let id = ScenarioId::SelfConvergence;
    let mut report = Report::new(id.id(), id.anchor());
    let mut cfg = small_data_config(o);
    cfg.t_end = o.t_end.unwrap_or(5.0);
    cfg.output = OutputSchedule::Linear { count: 1 };
    let base_dt = o.dt.unwrap_or(0.5);
    let dts: Vec<f64> = (0..4).map(|k| base_dt / f64::from(1u32 << k)).collect();
    cfg.dt = base_dt;
    describe(&mut report, &cfg);
    report.param("dts", &dts);
    let grid = cfg.grid()?;
    let mut finals = Vec::new();
    let mut worst_zero = 0.0f64;
    for &dt in &dts {
        let mut c = cfg.clone();
        c.dt = dt;
        let out = run_simulation(&c)?;
        worst_zero = worst_zero.max(out.summary.max_zero_mode_residual);
        finals.push(out.final_state);
    }
    let diffs: Vec<f64> = finals
        .windows(2)
        .map(|w| {
            let du: Vec<_> = w[0].u_hat.iter().zip(&w[1].u_hat).map(|(a, b)| a - b).collect();
            let dv: Vec<_> = w[0].ut_hat.iter().zip(&w[1].ut_hat).map(|(a, b)| a - b).collect();
            sobolev_norm_coeffs(&grid, &du, 0.0).hypot(sobolev_norm_coeffs(&grid, &dv, 0.0))
        })
        .collect();
    let orders: Vec<f64> = diffs.windows(2).map(|d| (d[0] / d[1]).log2()).collect();
    report.param("differences", &diffs);
    report.param("orders", &orders);
    let finest = *orders.last().unwrap_or(&f64::NAN);
    report.expect(Expectation::within(
        "observed order (finest pair)",
        finest,
        2.0,
        0.2,
        "second-order exponential integrator: differences shrink 4x per dt halving",
    ));
    report.expect(Expectation::below("zero-mode residual", worst_zero, ZERO_MODE_TOL, ZERO_MODE_ANCHOR));
    let halved: Vec<f64> = dts[1..].iter().rev().copied().collect();
    report.series.push(NormSeries::from_parts("dt_difference", halved, diffs.iter().rev().copied().collect())?);
    Ok(report)
}
