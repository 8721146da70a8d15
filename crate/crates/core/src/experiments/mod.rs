//! Scenario catalog and runner: each scenario evaluates one asymptotic statement and
//! returns pass/fail expectations plus the series it measured.

mod linear_runs;
mod nonlinear_runs;
mod output;
mod report;
mod symbolic;

use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use output::{write_report, write_simulation, OUT_DIR_ENV};
pub use report::{Check, Expectation, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioId {
    ModeExactness,
    ExpansionOrders,
    ErrorKernels,
    MultiplierNorms,
    LinearOptimal,
    LeadingTerm,
    SecondProfile,
    Table1,
    NonlinearDecay,
    NonlinearProfile,
    SelfConvergence,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 11] = [
        ScenarioId::ModeExactness,
        ScenarioId::ExpansionOrders,
        ScenarioId::ErrorKernels,
        ScenarioId::MultiplierNorms,
        ScenarioId::LinearOptimal,
        ScenarioId::LeadingTerm,
        ScenarioId::SecondProfile,
        ScenarioId::Table1,
        ScenarioId::NonlinearDecay,
        ScenarioId::NonlinearProfile,
        ScenarioId::SelfConvergence,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            ScenarioId::ModeExactness => "mode-exactness",
            ScenarioId::ExpansionOrders => "expansion-orders",
            ScenarioId::ErrorKernels => "error-kernels",
            ScenarioId::MultiplierNorms => "multiplier-norms",
            ScenarioId::LinearOptimal => "linear-optimal",
            ScenarioId::LeadingTerm => "leading-term",
            ScenarioId::SecondProfile => "second-profile",
            ScenarioId::Table1 => "table1",
            ScenarioId::NonlinearDecay => "nonlinear-decay",
            ScenarioId::NonlinearProfile => "nonlinear-profile",
            ScenarioId::SelfConvergence => "self-convergence",
        }
    }

    /// The statement the scenario checks.
    pub fn anchor(&self) -> &'static str {
        match self {
            ScenarioId::ModeExactness => {
                "v^(t, xi) = K0 v0^ + K1 v1^ solves w'' + 2 mu r^4 w' + (r^2 + r^4) w = 0 per mode"
            }
            ScenarioId::ExpansionOrders => "Im lambda = r + r^3/2 - r^5/8 + O(r^7) as r -> 0; lambda+ = -1/(2 mu) + O(r^-2)",
            ScenarioId::ErrorKernels => {
                "|K1 - G1| <~ e^{-c r^4 t}, |K0 - G0| and |K1 - G1 + (t/8) r^4 G0| <~ r e^{-c r^4 t} for small r"
            }
            ScenarioId::MultiplierNorms => "||G0(t)||_{Hdot^s} ~ t^{-(2s+n)/8}; ||G1(t)||_{L2} ~ D_n(t)",
            ScenarioId::LinearOptimal => "||v(t)||_{L2} ~ D_n(t) |P_v1|; ||v(t)||_{Hdot^s} ~ t^{-(2s+n-2)/8}",
            ScenarioId::LeadingTerm => "||v(t) - v^(1,p)(t)||_{Hdot^s} ~ t^{-(2s+n)/8} when A_lin != 0",
            ScenarioId::SecondProfile => {
                "||v - v^(1,p) - v^(2,p)||_{Hdot^s} = o(t^{-(2s+n)/8}); A(t;m) -> (1/8)(2 mu)^{-(2s+n+4m)/4} Gamma((2s+n)/4+m)"
            }
            ScenarioId::Table1 => "L2 rate of v: sqrt(t) for n=1, sqrt(ln t) for n=2, t^{-1/8} for n=3",
            ScenarioId::NonlinearDecay => "||u(t)||_{Hdot^s} ~ t^{-(2s+n-2)/8}; ||u(t)||_{L2} ~ sqrt(ln t) for n=2",
            ScenarioId::NonlinearProfile => "||u(t) - G1(t) P_u1||_{Hdot^s} = o(t^{-(2s+n-2)/8}) for s >= 1",
            ScenarioId::SelfConvergence => "second-order exponential integrator: errors shrink 4x per dt halving",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            ScenarioId::ModeExactness => "every lattice mode of the exact linear flow against an adaptive ODE solve",
            ScenarioId::ExpansionOrders => "remainder orders of the small- and large-frequency root expansions",
            ScenarioId::ErrorKernels => "fitted error-kernel constants and their stability under grid refinement",
            ScenarioId::MultiplierNorms => "decay exponents of profile multiplier norms by radial quadrature",
            ScenarioId::LinearOptimal => "decay exponents of the simulated linear solution for one (n, s)",
            ScenarioId::LeadingTerm => "decay exponent of the error after removing the first profile",
            ScenarioId::SecondProfile => "Gamma-function limits and the improved error after the second profile",
            ScenarioId::Table1 => "L2 and Hdot^1 rates of the linear solution for n = 1, 2, 3",
            ScenarioId::NonlinearDecay => "decay rates of a small-data nonlinear run (n = 2, p = 5)",
            ScenarioId::NonlinearProfile => "nonlinear solution minus its diffusion-wave profile",
            ScenarioId::SelfConvergence => "observed order of the nonlinear integrator under dt halving",
        }
    }
}

impl std::fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ScenarioId::ALL.iter().find(|id| id.id() == s).copied().ok_or_else(|| Error::UnknownScenario(s.into()))
    }
}

/// One catalog line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: ScenarioId,
    pub anchor: String,
    pub description: String,
}

pub fn list_scenarios() -> Vec<CatalogEntry> {
    ScenarioId::ALL
        .iter()
        .map(|id| CatalogEntry { id: *id, anchor: id.anchor().into(), description: id.description().into() })
        .collect()
}

/// Parameter overrides accepted by every scenario; each scenario ignores the ones that do
/// not apply to it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Overrides {
    pub n: Option<usize>,
    pub points: Option<usize>,
    pub half_length: Option<f64>,
    pub mu: Option<f64>,
    pub p: Option<f64>,
    pub s: Option<f64>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub strict: bool,
}

pub fn run_scenario(id: ScenarioId, overrides: &Overrides) -> Result<Report> {
    let start = Instant::now();
    let mut report = match id {
        ScenarioId::ModeExactness => symbolic::mode_exactness(overrides),
        ScenarioId::ExpansionOrders => symbolic::expansion_orders(overrides),
        ScenarioId::ErrorKernels => symbolic::error_kernels(overrides),
        ScenarioId::MultiplierNorms => symbolic::multiplier_norms(overrides),
        ScenarioId::LinearOptimal => linear_runs::linear_optimal(overrides),
        ScenarioId::LeadingTerm => linear_runs::leading_term(overrides),
        ScenarioId::SecondProfile => linear_runs::second_profile(overrides),
        ScenarioId::Table1 => linear_runs::table1(overrides),
        ScenarioId::NonlinearDecay => nonlinear_runs::nonlinear_decay(overrides),
        ScenarioId::NonlinearProfile => nonlinear_runs::nonlinear_profile(overrides),
        ScenarioId::SelfConvergence => nonlinear_runs::self_convergence(overrides),
    }?;
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Process exit code: 0 when every expectation passed, 2 on an expectation failure.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().all(Report::passed) {
        0
    } else {
        2
    }
}

/// Exit code for a runtime error.
pub const RUNTIME_ERROR_EXIT: i32 = 3;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_eleven_anchored_entries() {
        let cat = list_scenarios();
        assert_eq!(cat.len(), 11);
        assert!(cat.iter().all(|e| !e.anchor.is_empty()));
        let json = serde_json::to_string(&cat).unwrap();
        let back: Vec<CatalogEntry> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cat);
        for e in &cat {
            assert_eq!(e.id.id().parse::<ScenarioId>().unwrap(), e.id);
            assert_eq!(serde_json::to_value(e.id).unwrap(), serde_json::json!(e.id.id()));
        }
        assert!("nope".parse::<ScenarioId>().is_err());
    }

    #[test]
    fn exit_codes_follow_expectations() {
        let mut ok = Report::new("x", "a");
        ok.expect(Expectation::below("q", 0.5, 1.0, "a"));
        let mut bad = Report::new("y", "a");
        bad.expect(Expectation::within("q", 0.5, 1.0, 0.1, "a"));
        assert_eq!(exit_code(&[ok.clone()]), 0);
        assert_eq!(exit_code(&[ok, bad]), 2);
    }
}
