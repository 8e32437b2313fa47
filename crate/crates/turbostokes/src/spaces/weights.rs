//! Weighted-in-time Lebesgue norms `‖f‖_{L^p(a,b,w^a_κ;X)}` with
//! `w^a_κ(t) = |t−a|^κ`.
//!
//! Quadrature: midpoint rule on a geometrically refined mesh near the
//! singular endpoint `t = a`; the weight is integrable for `κ > −1` but
//! not smooth at `a`, the graded mesh restores near-uniform accuracy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Midpoint samples and quadrature weights for `∫_a^b (·) |t−a|^κ dt`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightedTimeGrid {
    pub a: f64,
    pub b: f64,
    pub kappa: f64,
    /// Midpoint sample times, ascending.
    pub times: Vec<f64>,
    /// Per-sample weight `|t_i − a|^κ · Δt_i`.
    pub weights: Vec<f64>,
}

impl WeightedTimeGrid {
    /// Geometric refinement: `levels` dyadic layers toward `a`, each split
    /// into `per_level` uniform cells, plus one closing cell at `a`.
    pub fn geometric(a: f64, b: f64, kappa: f64, levels: usize, per_level: usize) -> Result<Self> {
        if b <= a {
            return Err(Error::config("time interval must satisfy a < b"));
        }
        if kappa <= -1.0 {
            return Err(Error::config("weight exponent must exceed -1 for integrability"));
        }
        if levels == 0 || per_level == 0 {
            return Err(Error::config("levels and per_level must be positive"));
        }
        let span = b - a;
        // Ascending breakpoints a, a+span·2^{-levels}, …, a+span/2, b.
        let mut breaks = Vec::with_capacity(levels + 2);
        breaks.push(a);
        for l in (0..=levels).rev() {
            breaks.push(a + span * 2f64.powi(-(l as i32)));
        }
        let mut times = Vec::new();
        let mut weights = Vec::new();
        for w in breaks.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let h = (hi - lo) / per_level as f64;
            for i in 0..per_level {
                let t = lo + (i as f64 + 0.5) * h;
                times.push(t);
                weights.push((t - a).abs().powf(kappa) * h);
            }
        }
        Ok(WeightedTimeGrid { a, b, kappa, times, weights })
    }

    /// Default resolution used by the harnesses.
    pub fn standard(a: f64, b: f64, kappa: f64) -> Result<Self> {
        Self::geometric(a, b, kappa, 40, 8)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `Σ_i w_i`, which must approximate `∫_a^b |t−a|^κ dt`.
    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Exact value of `∫_a^b |t−a|^κ dt`.
    pub fn exact_weight_integral(&self) -> f64 {
        (self.b - self.a).powf(self.kappa + 1.0) / (self.kappa + 1.0)
    }
}

/// `(∫_a^b ‖f(t)‖^p |t−a|^κ dt)^{1/p}` for a series sampled on the grid's
/// midpoints.
pub fn weighted_time_norm(series: &[f64], grid: &WeightedTimeGrid, p: f64) -> Result<f64> {
    if series.len() != grid.len() {
        return Err(Error::config(format!(
            "series has {} samples but the time grid has {}",
            series.len(),
            grid.len()
        )));
    }
    if p < 1.0 {
        return Err(Error::config("time integrability p must be >= 1"));
    }
    let sum: f64 =
        series.iter().zip(&grid.weights).map(|(v, w)| v.abs().powf(p) * w).sum();
    Ok(sum.powf(1.0 / p))
}
