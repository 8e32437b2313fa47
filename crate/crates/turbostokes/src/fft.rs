//! Multidimensional FFT helpers on flat row-major buffers.
//!
//! Plans are cached per length and shared; `rustfft` plans are immutable
//! after construction, so transforms are safe to run concurrently.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::grid::TorusGrid;

type PlanMap = Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>;

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<PlanMap> = OnceLock::new();
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = plans.lock().unwrap();
    map.entry((n, forward))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            let dir = if forward { FftDirection::Forward } else { FftDirection::Inverse };
            planner.plan_fft(n, dir)
        })
        .clone()
}

/// In-place FFT along every axis. `forward = true` applies `Σ x e^{-ik·x}`
/// (unnormalized); the caller divides by `n^d` to obtain Fourier
/// coefficients of the trigonometric interpolant.
pub fn fft_nd(grid: &TorusGrid, data: &mut [Complex64], forward: bool) {
    let n = grid.n();
    let dim = grid.dim();
    debug_assert_eq!(data.len(), grid.len());
    let fft = plan(n, forward);
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    let mut line = vec![Complex64::default(); n];

    for ax in 0..dim {
        let stride = n.pow((dim - 1 - ax) as u32);
        if stride == 1 {
            for chunk in data.chunks_exact_mut(n) {
                fft.process_with_scratch(chunk, &mut scratch);
            }
        } else {
            let blocks = data.len() / (n * stride);
            for block in 0..blocks {
                let base0 = block * n * stride;
                for off in 0..stride {
                    let base = base0 + off;
                    for j in 0..n {
                        line[j] = data[base + j * stride];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for j in 0..n {
                        data[base + j * stride] = line[j];
                    }
                }
            }
        }
    }
}
