//! Uniform periodic grid on the d-dimensional torus.
//!
//! The torus is `[0, 2π)^d`, so wavenumbers are integer vectors. Grid
//! indices are row-major with the last axis fastest; index `i` along an
//! axis carries the wavenumber `i` for `i < n/2` and `i - n` otherwise,
//! i.e. each component ranges over `[-n/2, n/2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported spatial dimension.
pub const MAX_DIM: usize = 3;

/// Physical period of the torus in every direction.
pub const PERIOD: f64 = 2.0 * std::f64::consts::PI;

/// Uniform grid on `𝕋^d` with `n` points per dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusGrid {
    dim: usize,
    n: usize,
}

impl TorusGrid {
    /// New grid; `dim ∈ {2,3}`, `n` even and at least 8.
    pub fn new(dim: usize, n: usize) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::config(format!("grid dimension must be 2 or 3, got {dim}")));
        }
        if n < 8 || n % 2 != 0 {
            return Err(Error::config(format!("grid size must be even and >= 8, got {n}")));
        }
        Ok(TorusGrid { dim, n })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of grid points / Fourier modes, `n^d`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Volume of one grid cell, `(2π/n)^d`.
    pub fn cell_volume(&self) -> f64 {
        (PERIOD / self.n as f64).powi(self.dim as i32)
    }

    /// Volume of the torus, `(2π)^d`.
    pub fn volume(&self) -> f64 {
        PERIOD.powi(self.dim as i32)
    }

    /// Grid spacing `2π/n`.
    pub fn dx(&self) -> f64 {
        PERIOD / self.n as f64
    }

    /// Dealiasing cutoff of the 2/3 rule: modes with any `|k_j| > n/3` are dropped.
    pub fn dealias_cutoff(&self) -> i64 {
        (self.n as f64 / 3.0).floor() as i64
    }

    /// Decode a flat index into per-axis grid indices.
    pub fn axis_indices(&self, mut idx: usize) -> [usize; MAX_DIM] {
        let mut out = [0usize; MAX_DIM];
        for ax in (0..self.dim).rev() {
            out[ax] = idx % self.n;
            idx /= self.n;
        }
        out
    }

    /// Flat index from per-axis grid indices.
    pub fn flat_index(&self, ix: &[usize]) -> usize {
        let mut idx = 0usize;
        for ax in 0..self.dim {
            idx = idx * self.n + ix[ax];
        }
        idx
    }

    /// Integer wavenumber vector of a flat spectral index.
    pub fn wavenumber(&self, idx: usize) -> [i64; MAX_DIM] {
        let ix = self.axis_indices(idx);
        let half = (self.n / 2) as i64;
        let mut k = [0i64; MAX_DIM];
        for ax in 0..self.dim {
            let i = ix[ax] as i64;
            k[ax] = if i < half { i } else { i - self.n as i64 };
        }
        k
    }

    /// Derivative wavenumber: like [`Self::wavenumber`] but with the
    /// Nyquist component `-n/2` replaced by zero, keeping `∂_j` real
    /// and skew-adjoint.
    pub fn deriv_wavenumber(&self, idx: usize) -> [i64; MAX_DIM] {
        let half = -((self.n / 2) as i64);
        let mut k = self.wavenumber(idx);
        for ax in 0..self.dim {
            if k[ax] == half {
                k[ax] = 0;
            }
        }
        k
    }

    /// Flat spectral index of an integer wavenumber (components in `[-n/2, n/2)`).
    pub fn index_of_wavenumber(&self, k: &[i64]) -> Result<usize> {
        let half = (self.n / 2) as i64;
        let mut ix = [0usize; MAX_DIM];
        for ax in 0..self.dim {
            if k[ax] < -half || k[ax] >= half {
                return Err(Error::config(format!(
                    "wavenumber component {} outside [-{half}, {half})",
                    k[ax]
                )));
            }
            ix[ax] = if k[ax] >= 0 { k[ax] as usize } else { (k[ax] + self.n as i64) as usize };
        }
        Ok(self.flat_index(&ix[..self.dim]))
    }

    /// Physical coordinates of a flat grid index.
    pub fn point(&self, idx: usize) -> [f64; MAX_DIM] {
        let ix = self.axis_indices(idx);
        let dx = self.dx();
        let mut x = [0.0; MAX_DIM];
        for ax in 0..self.dim {
            x[ax] = ix[ax] as f64 * dx;
        }
        x
    }

    /// `|k|²` with the true wavenumber (Nyquist included).
    pub fn k_sq(&self, idx: usize) -> f64 {
        let k = self.wavenumber(idx);
        (0..self.dim).map(|ax| (k[ax] * k[ax]) as f64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(TorusGrid::new(1, 16).is_err());
        assert!(TorusGrid::new(4, 16).is_err());
        assert!(TorusGrid::new(2, 7).is_err());
        assert!(TorusGrid::new(2, 6).is_err());
        assert!(TorusGrid::new(2, 9).is_err());
    }

    #[test]
    fn wavenumber_roundtrip() {
        let g = TorusGrid::new(3, 8).unwrap();
        for idx in 0..g.len() {
            let k = g.wavenumber(idx);
            assert_eq!(g.index_of_wavenumber(&k[..3]).unwrap(), idx);
            for ax in 0..3 {
                assert!(k[ax] >= -4 && k[ax] < 4);
            }
        }
    }

    #[test]
    fn nyquist_is_zeroed_in_derivative_wavenumber() {
        let g = TorusGrid::new(2, 8).unwrap();
        let idx = g.index_of_wavenumber(&[-4, 1]).unwrap();
        assert_eq!(g.wavenumber(idx)[0], -4);
        assert_eq!(g.deriv_wavenumber(idx)[0], 0);
        assert_eq!(g.deriv_wavenumber(idx)[1], 1);
    }

    #[test]
    fn dealias_cutoff_matches_two_thirds_rule() {
        assert_eq!(TorusGrid::new(2, 16).unwrap().dealias_cutoff(), 5);
        assert_eq!(TorusGrid::new(2, 64).unwrap().dealias_cutoff(), 21);
        assert_eq!(TorusGrid::new(3, 32).unwrap().dealias_cutoff(), 10);
    }
}
