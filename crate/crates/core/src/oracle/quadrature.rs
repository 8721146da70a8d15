//! Globally adaptive Gauss-Kronrod (7, 15) quadrature over a list of panels.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over `[breaks[0], breaks[last]]`, starting from the given panels and
/// bisecting the worst panel until the total error falls below
/// `max(abs_tol, rel_tol * |value|)`.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Quadrature> {
    if breaks.len() < 2 {
        return Err(Error::Quadrature("need at least one panel".into()));
    }
    let mut heap = BinaryHeap::with_capacity(breaks.len() + max_subdivisions);
    let (mut value, mut error) = (0.0, 0.0);
    for w in breaks.windows(2) {
        let (v, e) = gauss_kronrod(&f, w[0], w[1]);
        value += v;
        error += e;
        heap.push(Panel { a: w[0], b: w[1], value: v, error: e });
    }
    let mut evaluations = 15 * (breaks.len() - 1);
    let mut splits = 0;
    while error > abs_tol.max(rel_tol * value.abs()) {
        if !value.is_finite() {
            return Err(Error::Quadrature("integrand produced a non-finite value".into()));
        }
        if splits >= max_subdivisions {
            return Err(Error::Quadrature(format!(
                "error {error:.3e} above tolerance after {splits} subdivisions (value {value:.6e})"
            )));
        }
        let worst = heap.pop().expect("heap holds every panel");
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gauss_kronrod(&f, worst.a, mid);
        let (v2, e2) = gauss_kronrod(&f, mid, worst.b);
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
        evaluations += 30;
        splits += 1;
    }
    if !value.is_finite() {
        return Err(Error::Quadrature("integrand produced a non-finite value".into()));
    }
    // re-sum to shed accumulated update rounding
    let (value, error) = heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    Ok(Quadrature { value, error, evaluations })
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<Quadrature> {
    integrate_panels(f, &[a, b], rel_tol, 0.0, 10_000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_gaussian() {
        let q = integrate(|x| x * x * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((q.value - 32.0 / 5.0).abs() < 1e-12);
        let q = integrate(|x: f64| (-x * x).exp(), -10.0, 10.0, 1e-12).unwrap();
        assert!((q.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_with_panels() {
        let breaks: Vec<f64> = (0..=400).map(|i| i as f64 * std::f64::consts::PI / 4.0).collect();
        let q = integrate_panels(|x: f64| x.sin().powi(2), &breaks, 1e-12, 0.0, 1000).unwrap();
        assert!((q.value - 50.0 * std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn reports_failure_on_singularity() {
        assert!(integrate(|x: f64| 1.0 / x, 0.0, 1.0, 1e-10).is_err());
    }
}
