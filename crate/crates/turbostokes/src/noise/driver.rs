//! Seeded Brownian increment streams.
//!
//! Each path gets an independent ChaCha stream derived from
//! `(seed, path index)`, so ensembles can be generated concurrently and
//! still reproduce the sequential result bitwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generator of per-path, per-mode Gaussian increments `ΔW_n ~ N(0, dt)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BrownianDriver {
    pub seed: u64,
    pub dt: f64,
}

impl BrownianDriver {
    pub fn new(seed: u64, dt: f64) -> Result<Self> {
        if dt <= 0.0 {
            return Err(Error::config("driver step must be positive"));
        }
        Ok(BrownianDriver { seed, dt })
    }

    fn rng_for_path(&self, path: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(path as u64 + 1);
        rng
    }

    /// Increment table for one path: `steps` rows of `modes` increments.
    pub fn increments(&self, path: usize, steps: usize, modes: usize) -> Vec<Vec<f64>> {
        let mut rng = self.rng_for_path(path);
        let sqrt_dt = self.dt.sqrt();
        (0..steps)
            .map(|_| (0..modes).map(|_| sqrt_dt * rng.sample::<f64, _>(StandardNormal)).collect())
            .collect()
    }
}

/// Increment tensor `[path][step][mode]` for auditing the driver.
pub fn sample_increments(
    driver: &BrownianDriver,
    steps: usize,
    paths: usize,
    modes: usize,
) -> Result<Vec<Vec<Vec<f64>>>> {
    if steps == 0 || paths == 0 {
        return Err(Error::config("steps and paths must be positive"));
    }
    Ok((0..paths).map(|p| driver.increments(p, steps, modes)).collect())
}

/// Scaled driver of the noise coupling `β^n_{t,λ} = λ^{-1/2} w^n_{λt}`:
/// increments over a target step `h` are `λ^{-1/2}` times the sum of the
/// base increments covering `λh`.
///
/// Requires `λ·h` to be an integer multiple of the base resolution so the
/// aggregation is exact.
pub fn scaled_increments(
    driver: &BrownianDriver,
    path: usize,
    out_steps: usize,
    modes: usize,
    lambda: f64,
    h: f64,
) -> Result<Vec<Vec<f64>>> {
    let ratio = lambda * h / driver.dt;
    let m = ratio.round() as usize;
    if m == 0 || (ratio - m as f64).abs() > 1e-9 * ratio.max(1.0) {
        return Err(Error::config(format!(
            "λ·h = {} is not an integer multiple of the base step {}",
            lambda * h,
            driver.dt
        )));
    }
    let base = driver.increments(path, out_steps * m, modes);
    let scale = lambda.powf(-0.5);
    let mut out = Vec::with_capacity(out_steps);
    for s in 0..out_steps {
        let mut row = vec![0.0; modes];
        for sub in 0..m {
            for (j, v) in base[s * m + sub].iter().enumerate() {
                row[j] += v;
            }
        }
        for v in row.iter_mut() {
            *v *= scale;
        }
        out.push(row);
    }
    Ok(out)
}

/// Sum groups of `m` consecutive fine increments into coarse ones
/// (the standard coupling for step-halving convergence studies).
pub fn aggregate_increments(fine: &[Vec<f64>], m: usize) -> Vec<Vec<f64>> {
    fine.chunks(m)
        .map(|chunk| {
            let modes = chunk[0].len();
            let mut row = vec![0.0; modes];
            for step in chunk {
                for (j, v) in step.iter().enumerate() {
                    row[j] += v;
                }
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_reproduces_increments() {
        let d = BrownianDriver::new(12, 0.01).unwrap();
        let a = d.increments(3, 50, 4);
        let b = d.increments(3, 50, 4);
        assert_eq!(a, b);
        let c = d.increments(4, 50, 4);
        assert_ne!(a, c);
    }

    #[test]
    fn increment_moments_match_clt_bounds() {
        let dt = 0.01;
        let d = BrownianDriver::new(99, dt).unwrap();
        let table = sample_increments(&d, 100, 100, 1).unwrap();
        let flat: Vec<f64> = table.iter().flatten().map(|r| r[0]).collect();
        let n = flat.len() as f64;
        let mean = flat.iter().sum::<f64>() / n;
        assert!(mean.abs() < 3.0 * (dt / n).sqrt(), "mean {mean}");
        let var = flat.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
        // SE of sample variance of N(0,dt) is dt·√(2/n)
        assert!((var - dt).abs() < 3.0 * dt * (2.0 / n).sqrt(), "var {var}");
    }

    #[test]
    fn cross_mode_covariance_vanishes() {
        let dt = 0.02;
        let d = BrownianDriver::new(5, dt).unwrap();
        let table = d.increments(0, 20_000, 2);
        let n = table.len() as f64;
        let cov = table.iter().map(|r| r[0] * r[1]).sum::<f64>() / n;
        assert!(cov.abs() < 3.0 * dt / n.sqrt(), "cov {cov}");
    }

    #[test]
    fn scaled_increments_aggregate_base_path() {
        let dt = 0.001;
        let d = BrownianDriver::new(7, dt).unwrap();
        // λ=4, h=0.001 → each scaled increment = ½ · (sum of 4 base increments)
        let scaled = scaled_increments(&d, 0, 10, 3, 4.0, dt).unwrap();
        let base = d.increments(0, 40, 3);
        for s in 0..10 {
            for j in 0..3 {
                let sum: f64 = (0..4).map(|i| base[4 * s + i][j]).sum();
                assert!((scaled[s][j] - 0.5 * sum).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn lambda_one_is_identity_coupling() {
        let d = BrownianDriver::new(7, 0.01).unwrap();
        let scaled = scaled_increments(&d, 2, 25, 2, 1.0, 0.01).unwrap();
        let base = d.increments(2, 25, 2);
        assert_eq!(scaled, base);
    }

    #[test]
    fn incompatible_step_ratio_rejected() {
        let d = BrownianDriver::new(7, 0.01).unwrap();
        assert!(scaled_increments(&d, 0, 10, 1, 4.0, 0.0013).is_err());
    }
}
