//! `boussinesq`: run simulations, verify scenarios, list the catalog and fit rates.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use boussinesq_core::experiments::{
    exit_code, list_scenarios, run_scenario, write_report, write_simulation, Overrides, Report, ScenarioId,
    OUT_DIR_ENV, RUNTIME_ERROR_EXIT,
};
use boussinesq_core::nonlinear::{run_simulation, SimConfig};
use boussinesq_core::oracle::{fit_rate, FitMode};
use boussinesq_core::spectral::read_series_csv;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "boussinesq", version, about = "Dissipative Boussinesq simulations and decay-rate verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a nonlinear simulation from a TOML or JSON configuration
    Simulate {
        config: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run one scenario (or `all`) and report pass/fail per expectation
    Verify {
        scenario: String,
        #[command(flatten)]
        flags: Flags,
        /// Print the report as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// List the scenario catalog
    List {
        #[arg(long)]
        json: bool,
    },
    /// Fit decay rates to a `t,label,value` CSV
    Fit {
        csv: PathBuf,
        /// Only fit this series
        #[arg(long)]
        label: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::PowerLaw)]
        mode: Mode,
        #[arg(long)]
        t_min: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    PowerLaw,
    LogGrowth,
}

#[derive(Args, Clone, Default)]
struct Flags {
    /// Spatial dimension
    #[arg(long = "n")]
    n: Option<usize>,
    /// Grid points per axis
    #[arg(long = "N")]
    points: Option<usize>,
    /// Box half-length
    #[arg(long = "L")]
    half_length: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    /// Nonlinearity exponent
    #[arg(long)]
    p: Option<f64>,
    /// Sobolev index
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// Output root
    #[arg(long, env = OUT_DIR_ENV, default_value = "out")]
    out: PathBuf,
    /// Fail on truncated moments instead of warning
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    seed: Option<u64>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            n: self.n,
            points: self.points,
            half_length: self.half_length,
            mu: self.mu,
            p: self.p,
            s: self.s,
            dt: self.dt,
            t_end: self.t_end,
            seed: self.seed,
            strict: self.strict,
        }
    }

    fn apply(&self, cfg: &mut SimConfig) {
        if let Some(n) = self.n {
            cfg.dim = n;
        }
        if let Some(v) = self.points {
            cfg.points = v;
        }
        if let Some(v) = self.half_length {
            cfg.half_length = v;
        }
        if let Some(v) = self.mu {
            cfg.mu = v;
        }
        if let Some(v) = self.p {
            cfg.p = v;
        }
        if let Some(s) = self.s {
            cfg.sobolev = vec![s];
        }
        if let Some(v) = self.dt {
            cfg.dt = v;
        }
        if let Some(v) = self.t_end {
            cfg.t_end = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        cfg.strict |= self.strict;
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(RUNTIME_ERROR_EXIT as u8)
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Simulate { config, flags } => simulate(&config, &flags),
        Command::Verify { scenario, flags, json } => verify(&scenario, &flags, json),
        Command::List { json } => {
            let catalog = list_scenarios();
            if json {
                println!("{}", serde_json::to_string_pretty(&catalog)?);
            } else {
                for entry in catalog {
                    println!("{:<18} {}", entry.id.id(), entry.description);
                    println!("{:<18} {}", "", entry.anchor);
                }
            }
            Ok(0)
        }
        Command::Fit { csv, label, mode, t_min, t_max } => fit(&csv, label.as_deref(), mode, t_min, t_max),
    }
}

fn simulate(path: &Path, flags: &Flags) -> Result<i32> {
    let mut cfg = SimConfig::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    flags.apply(&mut cfg);
    cfg.validate()?;
    log::info!("simulating n={} N={} t_end={} dt={}", cfg.dim, cfg.points, cfg.t_end, cfg.dt);
    let output = run_simulation(&cfg)?;
    let dir = write_simulation(&cfg, &output, &flags.out)?;
    println!("{}", serde_json::to_string_pretty(&output.summary)?);
    println!("wrote {}", dir.display());
    Ok(0)
}

fn verify(scenario: &str, flags: &Flags, json: bool) -> Result<i32> {
    let ids: Vec<ScenarioId> = if scenario == "all" { ScenarioId::ALL.to_vec() } else { vec![scenario.parse()?] };
    let overrides = flags.overrides();
    let mut reports = Vec::new();
    for id in ids {
        log::info!("running {id}");
        let report = run_scenario(id, &overrides).with_context(|| format!("scenario {id}"))?;
        let dir = write_report(&report, &flags.out)?;
        if json {
            println!("{}", serde_json::to_string_pretty(&report)?);
        } else {
            print_report(&report);
            println!("  wrote {}", dir.display());
        }
        reports.push(report);
    }
    Ok(exit_code(&reports))
}

fn print_report(report: &Report) {
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    println!("{verdict} {} ({:.1} s)", report.scenario, report.elapsed_seconds);
    for e in &report.expectations {
        let mark = if e.passed { "ok  " } else { "FAIL" };
        println!("  [{mark}] {}: {:.6e} (target {})", e.quantity, e.observed, e.target_text());
    }
    for note in &report.notes {
        println!("  note: {note}");
    }
}

fn fit(path: &Path, label: Option<&str>, mode: Mode, t_min: Option<f64>, t_max: Option<f64>) -> Result<i32> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let series = read_series_csv(BufReader::new(file))?;
    let mode = match mode {
        Mode::PowerLaw => FitMode::PowerLaw,
        Mode::LogGrowth => FitMode::LogGrowth,
    };
    let window = match (t_min, t_max) {
        (None, None) => None,
        (a, b) => Some((a.unwrap_or(f64::MIN_POSITIVE), b.unwrap_or(f64::MAX))),
    };
    let mut fits = serde_json::Map::new();
    for s in series.iter().filter(|s| label.is_none_or(|l| s.label() == l)) {
        match fit_rate(s, window, mode) {
            Ok(f) => {
                fits.insert(s.label().to_string(), serde_json::to_value(f)?);
            }
            Err(e) if label.is_none() => log::warn!("skipping `{}`: {e}", s.label()),
            Err(e) => return Err(e.into()),
        }
    }
    if fits.is_empty() {
        bail!("no series could be fitted");
    }
    println!("{}", serde_json::to_string_pretty(&fits)?);
    Ok(0)
}
