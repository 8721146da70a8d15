use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::nonlinearity::{NonlinearForm, NonlinearitySpec};
use crate::error::{invalid, Error, Result};
use crate::sampling::{lin_spaced, log_spaced};
use crate::spectral::{Field, GridSpec};
use crate::symbols::ModelParams;

/// Initial data families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresetKind {
    /// `u0 = a0 e^{-|x|^2/w^2}`, `u1 = a1 e^{-|x - shift e1|^2/w^2}`.
    Gaussian,
    /// Gaussian `u0`; `u1 = a1 (x1/w) e^{-|x|^2/w^2}`, which has zero mean.
    GaussianDerivative,
    /// Sums of `bumps` Gaussians with seeded random centres and amplitudes.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataPreset {
    pub preset: PresetKind,
    #[serde(default)]
    pub u0_amplitude: f64,
    pub u1_amplitude: f64,
    pub width: f64,
    #[serde(default)]
    pub shift: f64,
    #[serde(default = "default_bumps")]
    pub bumps: usize,
}

fn default_bumps() -> usize {
    4
}

impl DataPreset {
    pub fn gaussian(u0_amplitude: f64, u1_amplitude: f64, width: f64, shift: f64) -> Self {
        Self { preset: PresetKind::Gaussian, u0_amplitude, u1_amplitude, width, shift, bumps: default_bumps() }
    }

    /// `(u0, u1)` sampled on `grid`.
    pub fn build(&self, grid: GridSpec, seed: u64) -> Result<(Field, Field)> {
        if !(self.width > 0.0) {
            return Err(invalid("data width must be positive"));
        }
        let w2 = self.width * self.width;
        let dim = grid.dim();
        let r2 = move |x: [f64; 3], c: [f64; 3]| (0..dim).map(|a| (x[a] - c[a]).powi(2)).sum::<f64>();
        let (a0, a1, shift) = (self.u0_amplitude, self.u1_amplitude, self.shift);
        match self.preset {
            PresetKind::Gaussian => Ok((
                Field::from_fn(grid, |x| a0 * (-r2(x, [0.0; 3]) / w2).exp()),
                Field::from_fn(grid, |x| a1 * (-r2(x, [shift, 0.0, 0.0]) / w2).exp()),
            )),
            PresetKind::GaussianDerivative => Ok((
                Field::from_fn(grid, |x| a0 * (-r2(x, [0.0; 3]) / w2).exp()),
                Field::from_fn(grid, |x| a1 * x[0] / self.width * (-r2(x, [0.0; 3]) / w2).exp()),
            )),
            PresetKind::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut bumps = |amp: f64| {
                    (0..self.bumps)
                        .map(|_| {
                            let mut c = [0.0; 3];
                            for v in c.iter_mut().take(dim) {
                                *v = rng.gen_range(-2.0..2.0) * self.width;
                            }
                            (c, amp * rng.gen_range(-1.0..1.0))
                        })
                        .collect::<Vec<_>>()
                };
                let b0 = bumps(a0);
                let b1 = bumps(a1);
                let eval =
                    |b: &[([f64; 3], f64)], x: [f64; 3]| b.iter().map(|(c, a)| a * (-r2(x, *c) / w2).exp()).sum();
                Ok((Field::from_fn(grid, |x| eval(&b0, x)), Field::from_fn(grid, |x| eval(&b1, x))))
            }
        }
    }
}

/// Output times, snapped to multiples of the time step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "schedule", rename_all = "lowercase", deny_unknown_fields)]
pub enum OutputSchedule {
    Linear { count: usize },
    Log { count: usize, t_min: f64 },
}

impl OutputSchedule {
    pub fn times(&self, dt: f64, t_end: f64) -> Vec<f64> {
        let raw = match *self {
            OutputSchedule::Linear { count } => lin_spaced(t_end / count.max(1) as f64, t_end, count),
            OutputSchedule::Log { count, t_min } => log_spaced(t_min.max(dt), t_end, count),
        };
        let mut steps: Vec<u64> = raw.iter().map(|t| ((t / dt).round() as u64).max(1)).collect();
        steps.dedup();
        steps.iter().map(|&k| k as f64 * dt).filter(|t| *t <= t_end * (1.0 + 1e-12)).collect()
    }
}

fn default_sobolev() -> Vec<f64> {
    vec![1.0]
}

fn default_boundary_tol() -> Option<f64> {
    Some(1e-8)
}

fn default_step_tol() -> f64 {
    super::stepper::DEFAULT_STEP_TOL
}

fn default_scale() -> f64 {
    1.0
}

fn default_sign() -> f64 {
    1.0
}

fn default_form() -> NonlinearForm {
    NonlinearForm::Signed
}

/// A nonlinear run. Serialized as flat TOML (or JSON) with `[data]` and `[output]` tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub dim: usize,
    pub points: usize,
    pub half_length: f64,
    pub mu: f64,
    pub p: f64,
    #[serde(default = "default_form")]
    pub form: NonlinearForm,
    #[serde(default = "default_sign")]
    pub sign: f64,
    #[serde(default = "default_scale")]
    pub scale: f64,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "default_sobolev")]
    pub sobolev: Vec<f64>,
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub snapshot_every: usize,
    #[serde(default = "default_boundary_tol")]
    pub boundary_tol: Option<f64>,
    #[serde(default = "default_step_tol")]
    pub step_tol: f64,
    pub data: DataPreset,
    pub output: OutputSchedule,
}

impl SimConfig {
    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.dim, self.points, self.half_length)
    }

    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.mu)
    }

    pub fn nonlinearity(&self) -> Result<NonlinearitySpec> {
        Ok(NonlinearitySpec::new(self.p, self.form, self.sign)?.with_scale(self.scale))
    }

    pub fn output_times(&self) -> Vec<f64> {
        self.output.times(self.dt, self.t_end)
    }

    pub fn validate(&self) -> Result<()> {
        let grid = self.grid()?;
        self.params()?;
        self.nonlinearity()?;
        if !(self.dt > 0.0) || !(self.t_end > 0.0) {
            return Err(invalid("dt and t_end must be positive"));
        }
        let cap = 0.5 * grid.spacing();
        if self.dt > cap * (1.0 + 1e-12) {
            return Err(invalid(format!("dt = {} exceeds the cap 0.5 dx = {cap}", self.dt)));
        }
        if self.sobolev.iter().any(|s| !(*s >= 0.0)) {
            return Err(invalid("Sobolev indices must be non-negative"));
        }
        if self.output_times().is_empty() {
            return Err(invalid("output schedule produces no times"));
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SimConfig = toml::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: SimConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads `.json` files as JSON and anything else as TOML.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Self::from_json_str(&text),
            _ => Self::from_toml_str(&text),
        }
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Format(e.to_string()))
    }
}
