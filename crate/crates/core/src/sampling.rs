//! Sample point sequences.

/// `n` points spaced evenly in `log t` from `a` to `b` inclusive.
pub fn log_spaced(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let (la, lb) = (a.ln(), b.ln());
            (0..n)
                .map(|i| {
                    if i == 0 {
                        a
                    } else if i + 1 == n {
                        b
                    } else {
                        (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

/// `n` evenly spaced points from `a` to `b` inclusive.
pub fn lin_spaced(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let t = log_spaced(1e2, 1e6, 50);
        assert_eq!((t[0], t[49], t.len()), (1e2, 1e6, 50));
        assert!(t.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(lin_spaced(0.0, 0.5, 3), vec![0.0, 0.25, 0.5]);
    }
}
