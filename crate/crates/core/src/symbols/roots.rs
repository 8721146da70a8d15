use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Dissipation coefficient `mu` of `u_tt - Lap u + Lap^2 u + 2 mu Lap^2 u_t = Lap f(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ModelParams {
    mu: f64,
}

impl ModelParams {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu < 1.0) {
            return Err(invalid(format!("mu must lie in (0, 1) (got {mu})")));
        }
        Ok(Self { mu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Damping coefficient of the mode ODE, `2 mu r^4`.
    pub fn damping(&self, r: f64) -> f64 {
        2.0 * self.mu * r.powi(4)
    }

    /// Stiffness of the mode ODE, `r^2 + r^4`.
    pub fn stiffness(r: f64) -> f64 {
        let r2 = r * r;
        r2 + r2 * r2
    }
}

impl TryFrom<f64> for ModelParams {
    type Error = crate::Error;
    fn try_from(mu: f64) -> Result<Self> {
        Self::new(mu)
    }
}

impl From<ModelParams> for f64 {
    fn from(p: ModelParams) -> f64 {
        p.mu
    }
}

/// Sign of the discriminant `mu^2 r^8 - r^2 - r^4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Complex-conjugate roots (includes `r = 0`, where both roots vanish).
    Oscillatory,
    /// Roots closer than the confluence threshold.
    Degenerate,
    /// Two distinct negative real roots.
    Overdamped,
}

/// Roots of `lambda^2 + 2 mu r^4 lambda + r^2 + r^4 = 0` at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharRoots {
    pub r: f64,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
    pub discriminant: f64,
    pub regime: Regime,
}

impl CharRoots {
    /// Common real part `-mu r^4` in the oscillatory regime.
    pub fn real_part(&self) -> f64 {
        0.5 * (self.lambda_plus.re + self.lambda_minus.re)
    }

    /// `|lambda_+ - lambda_-|`.
    pub fn separation(&self) -> f64 {
        (self.lambda_plus - self.lambda_minus).norm()
    }

    /// Residual of the characteristic polynomial at both roots.
    pub fn residual(&self, params: &ModelParams) -> f64 {
        let a = params.damping(self.r);
        let b = ModelParams::stiffness(self.r);
        let p = |l: Complex64| (l * l + l * a + b).norm();
        p(self.lambda_plus).max(p(self.lambda_minus))
    }
}

/// Threshold on `|lambda_+ - lambda_-|` below which the confluent forms are used.
pub fn degeneracy_threshold(r: f64) -> f64 {
    1e-6 * (1.0 + r.powi(4))
}

/// Characteristic roots, the larger-magnitude root first and the other from the
/// product `lambda_+ lambda_- = r^2 + r^4`, which avoids cancellation.
pub fn char_roots(r: f64, params: &ModelParams) -> CharRoots {
    let r = r.abs();
    let mu = params.mu();
    let r4 = r.powi(4);
    let b = ModelParams::stiffness(r);
    // mu^2 r^8 - r^2 - r^4, arranged so the large-r cancellation stays relative
    let disc = (mu * r4) * (mu * r4) - b;
    if r == 0.0 {
        let zero = Complex64::new(0.0, 0.0);
        return CharRoots { r, lambda_plus: zero, lambda_minus: zero, discriminant: 0.0, regime: Regime::Oscillatory };
    }
    let sq = if disc < 0.0 { Complex64::new(0.0, (-disc).sqrt()) } else { Complex64::new(disc.sqrt(), 0.0) };
    let lambda_minus = Complex64::new(-mu * r4, 0.0) - sq;
    let lambda_plus = b / lambda_minus;
    let regime = if (lambda_plus - lambda_minus).norm() < degeneracy_threshold(r) {
        Regime::Degenerate
    } else if disc < 0.0 {
        Regime::Oscillatory
    } else {
        Regime::Overdamped
    };
    CharRoots { r, lambda_plus, lambda_minus, discriminant: disc, regime }
}

/// Radius of the degenerate circle, where `mu^2 r^6 = 1 + r^2`.
pub fn degenerate_radius(params: &ModelParams) -> f64 {
    let mu2 = params.mu() * params.mu();
    // g(r) = mu^2 r^6 - 1 - r^2 is increasing past its unique positive root
    let g = |r: f64| mu2 * r.powi(6) - 1.0 - r * r;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Small-frequency expansion `(lambda_R, lambda_I)` with `lambda_I` truncated at odd `order`.
///
/// `lambda_R = -mu r^4`; `lambda_I = r + r^3/2 - r^5/8 + O(r^7)`.
pub fn small_freq_expansion(r: f64, params: &ModelParams, order: u32, eps0: Option<f64>) -> Result<(f64, f64)> {
    if let Some(eps0) = eps0 {
        if r > eps0 {
            return Err(invalid(format!("r = {r} lies outside the small-frequency zone (eps0 = {eps0})")));
        }
    }
    if r < 0.0 {
        return Err(invalid("radius must be non-negative"));
    }
    let lambda_r = -params.mu() * r.powi(4);
    let lambda_i = match order {
        1 => r,
        3 => r + 0.5 * r.powi(3),
        5 => r + 0.5 * r.powi(3) - 0.125 * r.powi(5),
        _ => return Err(invalid(format!("expansion order must be 1, 3 or 5 (got {order})"))),
    };
    Ok((lambda_r, lambda_i))
}

/// Binomial tail `sum_{k >= k0} C(1/2, k) x^k`.
fn sqrt_tail(x: f64, k0: u32) -> f64 {
    let mut coeff = 1.0;
    for k in 0..k0 {
        coeff *= (0.5 - k as f64) / (k as f64 + 1.0);
    }
    let mut term = coeff * x.powi(k0 as i32);
    let mut sum = 0.0f64;
    let mut k = k0;
    while term.abs() > 1e-18 * sum.abs().max(f64::MIN_POSITIVE) && k < k0 + 400 {
        sum += term;
        term *= (0.5 - k as f64) / (k as f64 + 1.0) * x;
        k += 1;
    }
    sum
}

/// `lambda_I(exact) - lambda_I(order)` evaluated without cancellation.
///
/// Writing `lambda_I = r sqrt(1 + x)` with `x = r^2 - mu^2 r^6`, the truncation error is a
/// binomial tail in `x` plus explicit `mu` corrections. Valid in the oscillatory zone
/// with `|x| < 1`.
pub fn expansion_remainder(r: f64, params: &ModelParams, order: u32) -> Result<f64> {
    let mu2 = params.mu() * params.mu();
    let r2 = r * r;
    let r6 = r2 * r2 * r2;
    let x = r2 - mu2 * r6;
    if !(x.abs() < 1.0) || char_roots(r, params).discriminant >= 0.0 {
        return Err(invalid(format!("remainder series needs |x| < 1 in the oscillatory zone (r = {r})")));
    }
    // x - r^2 = -mu^2 r^6
    let inner = match order {
        1 => sqrt_tail(x, 1),
        3 => sqrt_tail(x, 2) - 0.5 * mu2 * r6,
        // x^2 - r^4 = -mu^2 r^6 (2 r^2 - mu^2 r^6)
        5 => sqrt_tail(x, 3) - 0.5 * mu2 * r6 + 0.125 * mu2 * r6 * (2.0 * r2 - mu2 * r6),
        _ => return Err(invalid(format!("expansion order must be 1, 3 or 5 (got {order})"))),
    };
    Ok(r * inner)
}
