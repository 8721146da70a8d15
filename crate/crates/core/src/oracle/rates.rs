//! Reference decay and growth rates.

use crate::error::{invalid, Result};

/// `sqrt(t)` for `n = 1`, `sqrt(ln t)` for `n = 2`, `t^{-(n-2)/8}` for `n >= 3`.
pub fn reference_rate_dn(t: f64, n: usize) -> Result<f64> {
    match n {
        0 => Err(invalid("dimension must be positive")),
        1 if t > 0.0 => Ok(t.sqrt()),
        2 if t > 1.0 => Ok(t.ln().sqrt()),
        2 => Err(invalid(format!("the n = 2 rate needs t > 1 (got {t})"))),
        _ if t > 0.0 => Ok(t.powf(-(n as f64 - 2.0) / 8.0)),
        _ => Err(invalid("time must be positive")),
    }
}

/// `D_n(t)` for `s = 0` and `t^{-(2s+n-2)/8}` for `s >= 1`; undefined for `0 < s < 1`.
pub fn reference_rate_bns(t: f64, n: usize, s: f64) -> Result<f64> {
    if s == 0.0 {
        reference_rate_dn(t, n)
    } else if s >= 1.0 {
        if !(t > 0.0) {
            return Err(invalid("time must be positive"));
        }
        Ok(t.powf(-(2.0 * s + n as f64 - 2.0) / 8.0))
    } else {
        Err(invalid(format!("the rate is defined only for s = 0 or s >= 1 (got {s})")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(reference_rate_dn(1e4, 1).unwrap(), 100.0);
        assert!((reference_rate_dn(std::f64::consts::E, 2).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(reference_rate_dn(256.0, 3).unwrap(), 0.5);
        assert!(reference_rate_dn(1.0, 2).is_err());
        assert!((reference_rate_bns(16.0, 3, 1.0).unwrap() - 16f64.powf(-0.375)).abs() < 1e-15);
        assert!((reference_rate_bns(16.0, 3, 1.0).unwrap() - 0.3536).abs() < 1e-4);
        assert_eq!(reference_rate_bns(1e4, 2, 2.0).unwrap(), 1e-2);
        assert_eq!(reference_rate_bns(50.0, 2, 0.0).unwrap(), 50f64.ln().sqrt());
        assert!(reference_rate_bns(10.0, 2, 0.5).is_err());
    }
}
