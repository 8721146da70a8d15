//! Log-log rate fitting of norm series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::NormSeries;

pub const MIN_FIT_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMode {
    /// Least-squares slope of `ln value` against `ln t`.
    PowerLaw,
    /// Fit of `value^2 / ln t` to a constant.
    LogGrowth,
}

/// Result of a rate fit.
///
/// In `LogGrowth` mode `slope` and `intercept` describe the regression of
/// `ln(value^2 / ln t)` on `ln t` and `drift` holds `(max - min) / mean` of
/// `value^2 / ln t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub mode: FitMode,
    pub samples: usize,
    pub drift: Option<f64>,
}

struct Regression {
    slope: f64,
    intercept: f64,
    r_squared: f64,
}

fn least_squares(x: &[f64], y: &[f64]) -> Regression {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
        syy += (b - my) * (b - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let r_squared = if syy <= f64::EPSILON * f64::EPSILON * n * my.abs().max(1.0) {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Regression { slope, intercept, r_squared }
}

/// Fits the series restricted to `window` (the whole series when `None`).
pub fn fit_rate(series: &NormSeries, window: Option<(f64, f64)>, mode: FitMode) -> Result<RateFit> {
    let sub = match window {
        Some((a, b)) => {
            if !(a < b) {
                return Err(Error::Fit(format!("degenerate window [{a}, {b}]")));
            }
            series.window(a, b)
        }
        None => series.clone(),
    };
    if sub.len() < MIN_FIT_SAMPLES {
        return Err(Error::Fit(format!("{} samples in window, at least {MIN_FIT_SAMPLES} required", sub.len())));
    }
    if let Some(v) = sub.values().iter().find(|v| !(**v > 0.0)) {
        return Err(Error::Fit(format!("non-positive value {v} in `{}`", series.label())));
    }
    let times = sub.times();
    let window = (times[0], times[times.len() - 1]);
    let x: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    match mode {
        FitMode::PowerLaw => {
            let y: Vec<f64> = sub.values().iter().map(|v| v.ln()).collect();
            let reg = least_squares(&x, &y);
            Ok(RateFit {
                slope: reg.slope,
                intercept: reg.intercept,
                r_squared: reg.r_squared,
                window,
                mode,
                samples: sub.len(),
                drift: None,
            })
        }
        FitMode::LogGrowth => {
            if window.0 <= 1.0 {
                return Err(Error::Fit("logarithmic fits need t > 1".into()));
            }
            let ratios: Vec<f64> = times.iter().zip(sub.values()).map(|(t, v)| v * v / t.ln()).collect();
            let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
            let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
            let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
            let y: Vec<f64> = ratios.iter().map(|r| r.ln()).collect();
            let reg = least_squares(&x, &y);
            Ok(RateFit {
                slope: reg.slope,
                intercept: reg.intercept,
                r_squared: reg.r_squared,
                window,
                mode,
                samples: sub.len(),
                drift: Some((max - min) / mean),
            })
        }
    }
}

/// `(max - min) / mean` of `value * weight(t)` over the series.
pub fn relative_drift(series: &NormSeries, weight: impl Fn(f64) -> f64) -> Result<f64> {
    if series.is_empty() {
        return Err(Error::Fit("empty series".into()));
    }
    let w: Vec<f64> = series.times().iter().zip(series.values()).map(|(t, v)| v * weight(*t)).collect();
    let mean = w.iter().sum::<f64>() / w.len() as f64;
    let max = w.iter().cloned().fold(f64::MIN, f64::max);
    let min = w.iter().cloned().fold(f64::MAX, f64::min);
    Ok((max - min) / mean)
}

/// Whether `value * weight(t)` is non-increasing over samples with `t >= t_from`.
pub fn is_decreasing_from(series: &NormSeries, t_from: f64, weight: impl Fn(f64) -> f64) -> bool {
    let w: Vec<f64> = series
        .times()
        .iter()
        .zip(series.values())
        .filter(|(t, _)| **t >= t_from)
        .map(|(t, v)| v * weight(*t))
        .collect();
    w.len() >= 2 && w.windows(2).all(|p| p[1] <= p[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::log_spaced;

    fn series(f: impl Fn(f64) -> f64) -> NormSeries {
        let t = log_spaced(1e2, 1e6, 50);
        let v = t.iter().map(|t| f(*t)).collect();
        NormSeries::from_parts("x", t, v).unwrap()
    }

    #[test]
    fn exact_power_law() {
        let fit = fit_rate(&series(|t| t.powf(-0.375)), None, FitMode::PowerLaw).unwrap();
        assert!((fit.slope + 0.375).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.window, (1e2, 1e6));
    }

    #[test]
    fn exact_log_growth() {
        let fit = fit_rate(&series(|t| t.ln().sqrt()), None, FitMode::LogGrowth).unwrap();
        assert!(fit.drift.unwrap() < 1e-12);
        assert!(fit.slope.abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let s = series(|t| t.powf(-0.5));
        assert!(fit_rate(&s, Some((5e5, 1e6)), FitMode::PowerLaw).is_err());
        assert!(fit_rate(&s, Some((1e6, 1e2)), FitMode::PowerLaw).is_err());
        let zero = series(|_| 0.0);
        assert!(fit_rate(&zero, None, FitMode::PowerLaw).is_err());
    }

    #[test]
    fn monotone_check() {
        let s = series(|t| t.powf(-0.5));
        assert!(is_decreasing_from(&s, 1e3, |_| 1.0));
        assert!(!is_decreasing_from(&s, 1e3, |t| t));
        assert!((relative_drift(&s, |t| t.sqrt()).unwrap()).abs() < 1e-12);
    }
}
