//! Bessel-potential and Besov norm estimators.
//!
//! `H^{s,q}` is realized as the `(1+|k|²)^{s/2}` multiplier followed by an
//! `L^q` grid quadrature (exact coefficient sum for `q = 2`). Besov norms
//! use a frozen Littlewood–Paley partition: a smooth radial bump `ρ` with
//! `ρ(r) = 1` for `r ≤ 1/2` and `ρ(r) = 0` for `r ≥ 1`, blocks
//! `φ_j(k) = ρ(|k|/2^{j+1}) − ρ(|k|/2^j)` supported in
//! `{2^{j-1} ≤ |k| ≤ 2^{j+1}}`, and the low block `φ_{-1}(k) = ρ(|k|)`.
//! A single mode with `|k| = 2^j` lands in block `j` with weight one.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::TorusGrid;
use crate::ops::coeffs_to_phys;

/// Smooth step: 0 for `t ≤ 0`, 1 for `t ≥ 1`, C^∞ monotone between.
fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / t).exp();
        let b = (-1.0 / (1.0 - t)).exp();
        a / (a + b)
    }
}

/// Radial bump: 1 on `r ≤ 1/2`, 0 on `r ≥ 1`.
fn bump(r: f64) -> f64 {
    if r <= 0.5 {
        1.0
    } else if r >= 1.0 {
        0.0
    } else {
        smooth_step(2.0 * (1.0 - r))
    }
}

/// Littlewood–Paley block weight `φ_j(|k|)`; `j = -1` is the low block.
pub fn lp_block_weight(j: i32, k_norm: f64) -> f64 {
    if j == -1 {
        bump(k_norm)
    } else {
        let scale = 2f64.powi(j);
        bump(k_norm / (2.0 * scale)) - bump(k_norm / scale)
    }
}

/// Largest block index that can be active on the grid.
pub fn lp_max_block(grid: TorusGrid) -> i32 {
    let kmax = (grid.dim() as f64).sqrt() * (grid.n() as f64) / 2.0;
    kmax.log2().ceil() as i32 + 1
}

/// `L^q` norm of a vector field: `ℓ²` over components, trapezoidal (here:
/// periodic rectangle) quadrature over the grid; exact for `q = 2`.
pub fn lq_norm(f: &SpectralField, q: f64) -> Result<f64> {
    if q < 1.0 {
        return Err(Error::config(format!("integrability q must be >= 1, got {q}")));
    }
    let grid = f.grid();
    if (q - 2.0).abs() < 1e-14 {
        return Ok(f.l2_norm());
    }
    let phys: Vec<Vec<f64>> = (0..grid.dim()).map(|c| coeffs_to_phys(&grid, f.component(c))).collect();
    let mut sum = 0.0;
    for idx in 0..grid.len() {
        let mag_sq: f64 = phys.iter().map(|c| c[idx] * c[idx]).sum();
        sum += mag_sq.powf(q / 2.0);
    }
    Ok((grid.cell_volume() * sum).powf(1.0 / q))
}

/// Bessel-potential norm `‖f‖_{H^{s,q}}`.
pub fn bessel_norm(f: &SpectralField, s: f64, q: f64) -> Result<f64> {
    if q < 1.0 {
        return Err(Error::config(format!("integrability q must be >= 1, got {q}")));
    }
    let grid = f.grid();
    if (q - 2.0).abs() < 1e-14 {
        // Parseval: exact coefficient sum
        let tables = crate::tables::grid_tables(&grid);
        let mut sum = 0.0;
        for c in 0..grid.dim() {
            if s == 1.0 {
                for (z, &ksq) in f.component(c).iter().zip(&tables.ksq) {
                    sum += (1.0 + ksq) * z.norm_sqr();
                }
            } else if s == 0.0 {
                for z in f.component(c) {
                    sum += z.norm_sqr();
                }
            } else {
                for (z, &ksq) in f.component(c).iter().zip(&tables.ksq) {
                    sum += (1.0 + ksq).powf(s) * z.norm_sqr();
                }
            }
        }
        return Ok((grid.volume() * sum).sqrt());
    }
    let mut shifted = f.clone();
    for c in 0..grid.dim() {
        let comp = shifted.component_mut(c);
        for (idx, z) in comp.iter_mut().enumerate() {
            *z *= (1.0 + grid.k_sq(idx)).powf(s / 2.0);
        }
    }
    lq_norm(&shifted, q)
}

/// Besov norm `‖f‖_{B^s_{q,p}} = (Σ_j 2^{jsp} ‖Δ_j f‖_{L^q}^p)^{1/p}`.
pub fn besov_norm(f: &SpectralField, s: f64, q: f64, p: f64) -> Result<f64> {
    if q < 1.0 || p < 1.0 {
        return Err(Error::config("Besov integrabilities must be >= 1"));
    }
    let grid = f.grid();
    let jmax = lp_max_block(grid);
    let mut sum = 0.0;
    for j in -1..=jmax {
        let mut block = f.clone();
        let mut mass = 0.0;
        for c in 0..grid.dim() {
            let comp = block.component_mut(c);
            for (idx, z) in comp.iter_mut().enumerate() {
                let w = lp_block_weight(j, grid.k_sq(idx).sqrt());
                *z *= w;
                mass += z.norm_sqr();
            }
        }
        if mass == 0.0 {
            continue;
        }
        let block_norm = lq_norm(&block, q)?;
        sum += 2f64.powf(j as f64 * s * p) * block_norm.powf(p);
    }
    Ok(sum.powf(1.0 / p))
}

/// Per-block `L^q` masses, for regularization and spectrum reports.
pub fn lp_block_norms(f: &SpectralField, q: f64) -> Result<Vec<(i32, f64)>> {
    let grid = f.grid();
    let jmax = lp_max_block(grid);
    let mut out = Vec::new();
    for j in -1..=jmax {
        let mut block = f.clone();
        let mut mass = 0.0;
        for c in 0..grid.dim() {
            let comp = block.component_mut(c);
            for (idx, z) in comp.iter_mut().enumerate() {
                *z *= lp_block_weight(j, grid.k_sq(idx).sqrt());
                mass += z.norm_sqr();
            }
        }
        if mass > 0.0 {
            out.push((j, lq_norm(&block, q)?));
        }
    }
    Ok(out)
}

/// Partition-of-unity residual `max_k |Σ_j φ_j(|k|) − 1|` on the grid.
pub fn lp_partition_residual(grid: TorusGrid) -> f64 {
    let jmax = lp_max_block(grid);
    let mut worst: f64 = 0.0;
    for idx in 0..grid.len() {
        let kn = grid.k_sq(idx).sqrt();
        let total: f64 = (-1..=jmax).map(|j| lp_block_weight(j, kn)).sum();
        worst = worst.max((total - 1.0).abs());
    }
    worst
}

/// Real single-mode field `amp·cos(k·x)` in component `comp`.
pub fn single_mode_field(grid: TorusGrid, comp: usize, k: &[i64], amp: f64) -> SpectralField {
    let mut f = SpectralField::zeros(grid);
    f.add_mode(comp, k, Complex64::new(0.5 * amp, 0.0)).expect("mode in range");
    f
}
