//! Adaptive Dormand-Prince 5(4) integration for small real systems.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

#[derive(Debug, Clone, Copy)]
pub struct OdeTolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_steps: usize,
}

impl Default for OdeTolerance {
    fn default() -> Self {
        Self { rel: 1e-12, abs: 1e-14, max_steps: 10_000_000 }
    }
}

/// Advances `y' = rhs(t, y)` from `t0` to `t1`.
pub fn dopri5<const D: usize, F>(rhs: F, t0: f64, y0: [f64; D], t1: f64, tol: OdeTolerance) -> Result<[f64; D]>
where
    F: Fn(f64, &[f64; D]) -> [f64; D],
{
    if t1 == t0 {
        return Ok(y0);
    }
    let span = t1 - t0;
    let dir = span.signum();
    let mut t = t0;
    let mut y = y0;
    let mut h = dir * (span.abs() * 1e-3).min(1e-2);
    let mut k = [[0.0; D]; 7];
    k[0] = rhs(t, &y);
    for _ in 0..tol.max_steps {
        if (t1 - t) * dir <= 0.0 {
            return Ok(y);
        }
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }
        for s in 1..7 {
            let mut ys = y;
            for (i, ysi) in ys.iter_mut().enumerate() {
                for j in 0..s {
                    *ysi += h * A[s][j] * k[j][i];
                }
            }
            k[s] = rhs(t + C[s] * h, &ys);
        }
        let mut y5 = y;
        let mut err = 0.0f64;
        for i in 0..D {
            let (mut d5, mut d4) = (0.0, 0.0);
            for s in 0..7 {
                d5 += B5[s] * k[s][i];
                d4 += B4[s] * k[s][i];
            }
            y5[i] += h * d5;
            let sc = tol.abs + tol.rel * y[i].abs().max(y5[i].abs());
            err = err.max((h * (d5 - d4)).abs() / sc);
        }
        if err <= 1.0 {
            t += h;
            y = y5;
            k[0] = k[6];
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < 1e-14 * t.abs().max(1.0) {
            return Err(Error::Quadrature(format!("ODE step size underflow at t = {t}")));
        }
    }
    Err(Error::Quadrature(format!("ODE integration exceeded {} steps", tol.max_steps)))
}

/// `(w, w')` at each requested time for `w'' + a w' + b w = 0`, `(w, w')(0) = y0`.
pub fn mode_ode_trajectory(a: f64, b: f64, y0: [f64; 2], times: &[f64], tol: OdeTolerance) -> Result<Vec<[f64; 2]>> {
    let rhs = |_: f64, y: &[f64; 2]| [y[1], -a * y[1] - b * y[0]];
    let mut out = Vec::with_capacity(times.len());
    let (mut t, mut y) = (0.0, y0);
    for &next in times {
        if next < t {
            return Err(crate::error::invalid("trajectory times must be ascending"));
        }
        y = dopri5(rhs, t, y, next, tol)?;
        t = next;
        out.push(y);
    }
    Ok(out)
}
