//! Multi-dimensional FFT on row-major grids with a process-wide plan cache.

use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    // plans are Send + Sync; only planning itself is serialised
    let mut planner = planner().lock().unwrap_or_else(|e| e.into_inner());
    planner.plan_fft(len, direction)
}

/// Unnormalised in-place transform of an `n^dim` row-major array along every axis.
pub(crate) fn transform(data: &mut [Complex64], n: usize, dim: usize, direction: FftDirection) {
    debug_assert_eq!(data.len(), n.pow(dim as u32));
    let fft = plan(n, direction);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let mut block = Vec::new();
    for axis in 0..dim {
        let inner = n.pow((dim - 1 - axis) as u32);
        if inner == 1 {
            // contiguous lines
            fft.process_with_scratch(data, &mut scratch);
            continue;
        }
        let outer = n.pow(axis as u32);
        block.resize(n * inner, Complex64::new(0.0, 0.0));
        for o in 0..outer {
            let base = o * n * inner;
            let chunk = &mut data[base..base + n * inner];
            // chunk is (n x inner); transpose so each line is contiguous
            for j in 0..n {
                for i in 0..inner {
                    block[i * n + j] = chunk[j * inner + i];
                }
            }
            fft.process_with_scratch(&mut block, &mut scratch);
            for j in 0..n {
                for i in 0..inner {
                    chunk[j * inner + i] = block[i * n + j];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft_2d(input: &[Complex64], n: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for k0 in 0..n {
            for k1 in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for j0 in 0..n {
                    for j1 in 0..n {
                        let phase = -2.0 * std::f64::consts::PI * ((k0 * j0 + k1 * j1) as f64) / n as f64;
                        acc += input[j0 * n + j1] * Complex64::from_polar(1.0, phase);
                    }
                }
                out[k0 * n + k1] = acc;
            }
        }
        out
    }

    #[test]
    fn matches_naive_2d_dft() {
        let n = 6;
        let input: Vec<Complex64> =
            (0..n * n).map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos())).collect();
        let mut data = input.clone();
        transform(&mut data, n, 2, FftDirection::Forward);
        let reference = naive_dft_2d(&input, n);
        for (a, b) in data.iter().zip(&reference) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}
