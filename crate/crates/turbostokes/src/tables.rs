//! Cached per-grid mode tables for the hot spectral loops.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::grid::{TorusGrid, MAX_DIM};

/// Precomputed per-mode data shared by projection, dealiasing and norms.
pub struct GridTables {
    /// Derivative wavenumber `k̃` (Nyquist zeroed) as floats.
    pub deriv_k: Vec<[f64; MAX_DIM]>,
    /// `|k̃|²`.
    pub deriv_ksq: Vec<f64>,
    /// True `|k|²` (Nyquist included), used by norms and viscous symbols.
    pub ksq: Vec<f64>,
    /// 2/3-rule mask.
    pub keep: Vec<bool>,
}

type Registry = Mutex<HashMap<TorusGrid, Arc<GridTables>>>;

pub fn grid_tables(grid: &TorusGrid) -> Arc<GridTables> {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = registry.lock().unwrap();
    map.entry(*grid)
        .or_insert_with(|| {
            let len = grid.len();
            let dim = grid.dim();
            let cut = grid.dealias_cutoff();
            let mut deriv_k = Vec::with_capacity(len);
            let mut deriv_ksq = Vec::with_capacity(len);
            let mut ksq = Vec::with_capacity(len);
            let mut keep = Vec::with_capacity(len);
            for idx in 0..len {
                let kd = grid.deriv_wavenumber(idx);
                let kt = grid.wavenumber(idx);
                let mut kf = [0.0; MAX_DIM];
                let mut dsq = 0.0;
                let mut tsq = 0.0;
                let mut inside = true;
                for ax in 0..dim {
                    kf[ax] = kd[ax] as f64;
                    dsq += (kd[ax] * kd[ax]) as f64;
                    tsq += (kt[ax] * kt[ax]) as f64;
                    inside &= kt[ax].abs() <= cut;
                }
                deriv_k.push(kf);
                deriv_ksq.push(dsq);
                ksq.push(tsq);
                keep.push(inside);
            }
            Arc::new(GridTables { deriv_k, deriv_ksq, ksq, keep })
        })
        .clone()
}
