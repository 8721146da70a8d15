use std::fs;

use boussinesq_core::experiments::{
    exit_code, list_scenarios, run_scenario, write_report, CatalogEntry, Overrides, ScenarioId,
};
use boussinesq_core::spectral::read_series_csv;

#[test]
fn catalog_is_stable_and_round_trips() {
    let catalog = list_scenarios();
    let ids: Vec<&str> = catalog.iter().map(|e| e.id.id()).collect();
    assert_eq!(
        ids,
        [
            "mode-exactness",
            "expansion-orders",
            "error-kernels",
            "multiplier-norms",
            "linear-optimal",
            "leading-term",
            "second-profile",
            "table1",
            "nonlinear-decay",
            "nonlinear-profile",
            "self-convergence"
        ]
    );
    let json = serde_json::to_string(&catalog).unwrap();
    let back: Vec<CatalogEntry> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, catalog);
}

#[test]
fn report_layout_on_disk() {
    let report = run_scenario(ScenarioId::ExpansionOrders, &Overrides::default()).unwrap();
    assert!(report.passed());
    assert!(report.expectations.iter().all(|e| !e.anchor.is_empty()));
    let root = tempfile::tempdir().unwrap();
    let dir = write_report(&report, root.path()).unwrap();
    assert_eq!(dir.parent().unwrap(), root.path().join("expansion-orders"));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["scenario"], "expansion-orders");
    assert!(manifest["expectations"].as_array().unwrap().len() >= 3);
    let series = read_series_csv(fs::read_to_string(dir.join("series.csv")).unwrap().as_bytes()).unwrap();
    assert_eq!(series.len(), report.series.len());
    assert_eq!(exit_code(&[report]), 0);
}

#[test]
fn small_nonlinear_runs_are_deterministic() {
    let o = Overrides { points: Some(128), half_length: Some(64.0), t_end: Some(5.0), ..Overrides::default() };
    let a = run_scenario(ScenarioId::SelfConvergence, &o).unwrap_or_else(|e| panic!("{e}"));
    let b = run_scenario(ScenarioId::SelfConvergence, &o).unwrap();
    let root = tempfile::tempdir().unwrap();
    let da = write_report(&a, &root.path().join("a")).unwrap();
    let db = write_report(&b, &root.path().join("b")).unwrap();
    assert_eq!(fs::read(da.join("series.csv")).unwrap(), fs::read(db.join("series.csv")).unwrap());
    assert_eq!(a.parameters, b.parameters);
}

#[test]
fn mode_exactness_passes_in_two_dimensions() {
    let o = Overrides { n: Some(2), points: Some(16), half_length: Some(8.0), ..Overrides::default() };
    let report = run_scenario(ScenarioId::ModeExactness, &o).unwrap();
    assert!(report.passed(), "{:?}", report.expectations);
}

#[test]
fn unknown_scenarios_are_rejected() {
    assert!("table2".parse::<ScenarioId>().is_err());
}
