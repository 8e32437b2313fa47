//! Spectral fields on the torus.
//!
//! A field is stored as its Fourier coefficients with the convention
//! `f(x) = Σ_k f̂(k) e^{ik·x}`, so `coeffs(k)` is the continuum Fourier
//! coefficient of the trigonometric interpolant. Real-valued fields have
//! Hermitian symmetry `f̂(-k) = conj(f̂(k))`.
//!
//! Derivatives multiply by `i·k̃_j` where `k̃` zeroes the Nyquist
//! component, which keeps `∂_j` real-valued and skew-adjoint.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::fft_nd;
use crate::grid::TorusGrid;

/// Scalar field in spectral representation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalarSpectralField {
    grid: TorusGrid,
    coeffs: Vec<Complex64>,
}

/// Vector field (`d` components) in spectral representation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralField {
    grid: TorusGrid,
    comps: Vec<Vec<Complex64>>,
    divfree: bool,
}

impl ScalarSpectralField {
    pub fn zeros(grid: TorusGrid) -> Self {
        ScalarSpectralField { grid, coeffs: vec![Complex64::default(); grid.len()] }
    }

    /// Forward transform of real grid samples (row-major).
    pub fn from_grid_values(grid: TorusGrid, values: &[f64]) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::config(format!(
                "grid sample count {} does not match grid with {} points",
                values.len(),
                grid.len()
            )));
        }
        let mut coeffs: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft_nd(&grid, &mut coeffs, true);
        let scale = 1.0 / grid.len() as f64;
        for c in coeffs.iter_mut() {
            *c *= scale;
        }
        Ok(ScalarSpectralField { grid, coeffs })
    }

    /// Inverse transform to real grid samples.
    pub fn to_grid_values(&self) -> Vec<f64> {
        let mut buf = self.coeffs.clone();
        fft_nd(&self.grid, &mut buf, false);
        buf.iter().map(|c| c.re).collect()
    }

    pub fn grid(&self) -> TorusGrid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    /// `∂_j` with the Nyquist line annihilated.
    pub fn derivative(&self, axis: usize) -> Result<Self> {
        if axis >= self.grid.dim() {
            return Err(Error::config(format!("axis {axis} out of range for dim {}", self.grid.dim())));
        }
        let mut out = self.clone();
        for (idx, c) in out.coeffs.iter_mut().enumerate() {
            let k = self.grid.deriv_wavenumber(idx);
            *c *= Complex64::new(0.0, k[axis] as f64);
        }
        Ok(out)
    }

    /// Zero every mode with any `|k_j| > n/3`.
    pub fn dealias(&mut self) {
        let tables = crate::tables::grid_tables(&self.grid);
        for (c, &keep) in self.coeffs.iter_mut().zip(&tables.keep) {
            if !keep {
                *c = Complex64::default();
            }
        }
    }

    /// `L²(𝕋^d)` norm, `(2π)^{d/2} (Σ_k |f̂(k)|²)^{1/2}` by Parseval.
    pub fn l2_norm(&self) -> f64 {
        let sum: f64 = self.coeffs.iter().map(|c| c.norm_sqr()).sum();
        (self.grid.volume() * sum).sqrt()
    }

    /// Largest violation of Hermitian symmetry `f̂(-k) - conj(f̂(k))`.
    pub fn max_hermitian_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for idx in 0..self.grid.len() {
            let k = self.grid.wavenumber(idx);
            let mut neg = [0i64; crate::grid::MAX_DIM];
            let half = -((self.grid.n() / 2) as i64);
            for ax in 0..self.grid.dim() {
                neg[ax] = if k[ax] == half { k[ax] } else { -k[ax] };
            }
            let nidx = self.grid.index_of_wavenumber(&neg[..self.grid.dim()]).unwrap();
            let r = (self.coeffs[nidx] - self.coeffs[idx].conj()).norm();
            worst = worst.max(r);
        }
        worst
    }
}

impl SpectralField {
    pub fn zeros(grid: TorusGrid) -> Self {
        let comps = (0..grid.dim()).map(|_| vec![Complex64::default(); grid.len()]).collect();
        SpectralField { grid, comps, divfree: false }
    }

    /// Forward transform of `d` real component sample arrays.
    pub fn from_grid_values(grid: TorusGrid, values: &[Vec<f64>]) -> Result<Self> {
        if values.len() != grid.dim() {
            return Err(Error::config(format!(
                "expected {} components, got {}",
                grid.dim(),
                values.len()
            )));
        }
        let mut comps = Vec::with_capacity(grid.dim());
        for v in values {
            comps.push(ScalarSpectralField::from_grid_values(grid, v)?.coeffs);
        }
        Ok(SpectralField { grid, comps, divfree: false })
    }

    pub fn from_components(grid: TorusGrid, comps: Vec<Vec<Complex64>>) -> Result<Self> {
        if comps.len() != grid.dim() || comps.iter().any(|c| c.len() != grid.len()) {
            return Err(Error::config("component layout does not match grid"));
        }
        Ok(SpectralField { grid, comps, divfree: false })
    }

    /// Inverse transform; one real sample array per component.
    pub fn to_grid_values(&self) -> Vec<Vec<f64>> {
        self.comps
            .iter()
            .map(|c| {
                let mut buf = c.clone();
                fft_nd(&self.grid, &mut buf, false);
                buf.iter().map(|z| z.re).collect()
            })
            .collect()
    }

    pub fn grid(&self) -> TorusGrid {
        self.grid
    }

    pub fn ncomp(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, c: usize) -> &[Complex64] {
        &self.comps[c]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut Vec<Complex64> {
        self.divfree = false;
        &mut self.comps[c]
    }

    pub fn divfree(&self) -> bool {
        self.divfree
    }

    pub(crate) fn set_divfree(&mut self, flag: bool) {
        self.divfree = flag;
    }

    pub fn scale(&mut self, s: f64) {
        for comp in self.comps.iter_mut() {
            for c in comp.iter_mut() {
                *c *= s;
            }
        }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: f64, other: &SpectralField) {
        debug_assert_eq!(self.grid, other.grid);
        self.divfree = self.divfree && other.divfree;
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += s * y;
            }
        }
    }

    pub fn dealias(&mut self) {
        let tables = crate::tables::grid_tables(&self.grid);
        for comp in self.comps.iter_mut() {
            for (c, &keep) in comp.iter_mut().zip(&tables.keep) {
                if !keep {
                    *c = Complex64::default();
                }
            }
        }
    }

    pub fn derivative(&self, axis: usize) -> Result<Self> {
        if axis >= self.grid.dim() {
            return Err(Error::config(format!("axis {axis} out of range for dim {}", self.grid.dim())));
        }
        let mut out = self.clone();
        for comp in out.comps.iter_mut() {
            for (idx, c) in comp.iter_mut().enumerate() {
                let k = self.grid.deriv_wavenumber(idx);
                *c *= Complex64::new(0.0, k[axis] as f64);
            }
        }
        Ok(out)
    }

    /// `L²(𝕋^d;ℝ^d)` norm with `ℓ²` over components.
    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    pub fn l2_norm_sq(&self) -> f64 {
        let sum: f64 =
            self.comps.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>()).sum();
        self.grid.volume() * sum
    }

    /// Real `L²` inner product `⟨f, g⟩ = ∫ f·g dx`.
    pub fn inner(&self, other: &SpectralField) -> f64 {
        debug_assert_eq!(self.grid, other.grid);
        let mut sum = 0.0;
        for (a, b) in self.comps.iter().zip(&other.comps) {
            for (x, y) in a.iter().zip(b) {
                sum += x.re * y.re + x.im * y.im;
            }
        }
        self.grid.volume() * sum
    }

    /// `‖∇f‖²_{L²}` via the derivative wavenumbers.
    pub fn grad_norm_sq(&self) -> f64 {
        let tables = crate::tables::grid_tables(&self.grid);
        let mut sum = 0.0;
        for comp in &self.comps {
            for (c, &ksq) in comp.iter().zip(&tables.deriv_ksq) {
                sum += ksq * c.norm_sqr();
            }
        }
        self.grid.volume() * sum
    }

    /// Largest per-mode divergence residual `|Σ_j k̃_j f̂_j(k)| / ‖f̂(k)‖`,
    /// maximized over modes with nonzero coefficient.
    pub fn max_div_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for idx in 0..self.grid.len() {
            let k = self.grid.deriv_wavenumber(idx);
            let mut div = Complex64::default();
            let mut mag = 0.0;
            for (ax, comp) in self.comps.iter().enumerate() {
                div += Complex64::new(k[ax] as f64, 0.0) * comp[idx];
                mag += comp[idx].norm_sqr();
            }
            if mag > 0.0 {
                worst = worst.max(div.norm() / mag.sqrt());
            }
        }
        worst
    }

    pub fn max_hermitian_residual(&self) -> f64 {
        self.comps
            .iter()
            .map(|c| {
                ScalarSpectralField { grid: self.grid, coeffs: c.clone() }.max_hermitian_residual()
            })
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(|c| c.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
    }

    /// Insert the conjugate mode pair `amp·e^{ik·x} + conj(amp)·e^{-ik·x}`
    /// into component `comp`, producing a real-valued contribution.
    pub fn add_mode(&mut self, comp: usize, k: &[i64], amp: Complex64) -> Result<()> {
        let idx = self.grid.index_of_wavenumber(k)?;
        let mut neg = [0i64; crate::grid::MAX_DIM];
        let half = -((self.grid.n() / 2) as i64);
        for ax in 0..self.grid.dim() {
            neg[ax] = if k[ax] == half { k[ax] } else { -k[ax] };
        }
        let nidx = self.grid.index_of_wavenumber(&neg[..self.grid.dim()])?;
        self.divfree = false;
        self.comps[comp][idx] += amp;
        if nidx != idx {
            self.comps[comp][nidx] += amp.conj();
        }
        Ok(())
    }
}

/// Random real scalar samples, standard normal per grid point.
pub fn random_grid_values<R: Rng>(grid: TorusGrid, rng: &mut R) -> Vec<f64> {
    (0..grid.len()).map(|_| rng.sample(StandardNormal)).collect()
}

/// Random band-limited real vector field: white spectrum truncated by the
/// 2/3 rule so products stay alias-free.
pub fn random_dealiased_field<R: Rng>(grid: TorusGrid, rng: &mut R) -> SpectralField {
    let values: Vec<Vec<f64>> = (0..grid.dim()).map(|_| random_grid_values(grid, rng)).collect();
    let mut f = SpectralField::from_grid_values(grid, &values).expect("layout");
    f.dealias();
    f
}

/// Random band-limited scalar field.
pub fn random_dealiased_scalar<R: Rng>(grid: TorusGrid, rng: &mut R) -> ScalarSpectralField {
    let mut f = ScalarSpectralField::from_grid_values(grid, &random_grid_values(grid, rng))
        .expect("layout");
    f.dealias();
    f
}

/// Random vector field with prescribed isotropic spectral decay
/// `|f̂(k)| ∝ |k|^{-alpha}` on `1 ≤ |k|_∞ ≤ kmax`, Gaussian amplitudes.
///
/// Each mode draws from its own stream keyed by `(seed, k)`, so the modes
/// shared by two grids carry identical amplitudes and refinement studies
/// compare a genuinely embedded spectrum.
pub fn random_power_law_field(
    grid: TorusGrid,
    alpha: f64,
    kmax: i64,
    seed: u64,
) -> SpectralField {
    use rand::SeedableRng;
    let dim = grid.dim();
    let mut f = SpectralField::zeros(grid);
    let mut visit = |k: [i64; crate::grid::MAX_DIM]| {
        let first = (0..dim).map(|ax| k[ax]).find(|&v| v != 0).unwrap_or(0);
        if first <= 0 {
            return;
        }
        let key = (0..dim).fold(seed ^ 0x706f_7765_726c_6177, |acc, ax| {
            acc.wrapping_mul(0x100000001b3).wrapping_add((k[ax] + (1 << 20)) as u64)
        });
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(key);
        let ksq: i64 = (0..dim).map(|ax| k[ax] * k[ax]).sum();
        let scale = (ksq as f64).sqrt().powf(-alpha);
        for comp in 0..dim {
            let amp = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            f.add_mode(comp, &k[..dim], scale * amp).expect("mode in range");
        }
    };
    let kmax = kmax.min(grid.n() as i64 / 2 - 1);
    if dim == 2 {
        for k1 in -kmax..=kmax {
            for k2 in -kmax..=kmax {
                visit([k1, k2, 0]);
            }
        }
    } else {
        for k1 in -kmax..=kmax {
            for k2 in -kmax..=kmax {
                for k3 in -kmax..=kmax {
                    visit([k1, k2, k3]);
                }
            }
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_field_transforms_to_zero_mode() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let values = vec![3.5; grid.len()];
        let f = ScalarSpectralField::from_grid_values(grid, &values).unwrap();
        assert!((f.coeffs()[0] - Complex64::new(3.5, 0.0)).norm() < 1e-13);
        let tail: f64 = f.coeffs()[1..].iter().map(|c| c.norm()).sum();
        assert!(tail < 1e-12);
    }

    #[test]
    fn cosine_transforms_to_half_amplitude_pair() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let values: Vec<f64> = (0..grid.len()).map(|i| grid.point(i)[0].cos()).collect();
        let f = ScalarSpectralField::from_grid_values(grid, &values).unwrap();
        let plus = grid.index_of_wavenumber(&[1, 0]).unwrap();
        let minus = grid.index_of_wavenumber(&[-1, 0]).unwrap();
        assert!((f.coeffs()[plus] - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        assert!((f.coeffs()[minus] - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        let rest: f64 = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != plus && *i != minus)
            .map(|(_, c)| c.norm())
            .sum();
        assert!(rest < 1e-12);
    }

    #[test]
    fn roundtrip_is_exact_on_random_samples() {
        let grid = TorusGrid::new(3, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let values: Vec<Vec<f64>> = (0..3).map(|_| random_grid_values(grid, &mut rng)).collect();
        let f = SpectralField::from_grid_values(grid, &values).unwrap();
        let back = f.to_grid_values();
        let mut scale = 0.0f64;
        let mut err = 0.0f64;
        for (a, b) in values.iter().zip(&back) {
            for (x, y) in a.iter().zip(b) {
                err = err.max((x - y).abs());
                scale = scale.max(x.abs());
            }
        }
        assert!(err <= 1e-12 * scale.max(1.0), "roundtrip error {err}");
    }

    #[test]
    fn derivative_of_cosine_is_minus_sine() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let values: Vec<f64> = (0..grid.len()).map(|i| grid.point(i)[0].cos()).collect();
        let f = ScalarSpectralField::from_grid_values(grid, &values).unwrap();
        let df = f.derivative(0).unwrap();
        let got = df.to_grid_values();
        for idx in 0..grid.len() {
            let expect = -grid.point(idx)[0].sin();
            assert!((got[idx] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_along_independent_axis_vanishes() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let values: Vec<f64> = (0..grid.len()).map(|i| grid.point(i)[0].cos()).collect();
        let f = ScalarSpectralField::from_grid_values(grid, &values).unwrap();
        let df = f.derivative(1).unwrap();
        assert!(df.coeffs().iter().map(|c| c.norm()).sum::<f64>() < 1e-12);
    }

    #[test]
    fn derivatives_commute() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = random_dealiased_scalar(grid, &mut rng);
        let d12 = f.derivative(0).unwrap().derivative(1).unwrap();
        let d21 = f.derivative(1).unwrap().derivative(0).unwrap();
        let norm: f64 = d12.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let diff: f64 = d12
            .coeffs()
            .iter()
            .zip(d21.coeffs())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff <= 1e-12 * norm);
    }

    #[test]
    fn derivative_rejects_bad_axis() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let f = ScalarSpectralField::zeros(grid);
        assert!(f.derivative(2).is_err());
    }

    #[test]
    fn dealias_zeroes_high_mode() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut f = SpectralField::zeros(grid);
        f.add_mode(0, &[7, 0], Complex64::new(1.0, 0.0)).unwrap();
        f.add_mode(1, &[3, 0], Complex64::new(1.0, 0.0)).unwrap();
        f.dealias();
        assert_eq!(f.component(0)[grid.index_of_wavenumber(&[7, 0]).unwrap()], Complex64::default());
        assert!(
            (f.component(1)[grid.index_of_wavenumber(&[3, 0]).unwrap()] - Complex64::new(1.0, 0.0))
                .norm()
                < 1e-15
        );
    }

    #[test]
    fn parseval_grid_energy_equals_coefficient_energy() {
        let grid = TorusGrid::new(2, 32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_dealiased_field(grid, &mut rng);
        let phys = f.to_grid_values();
        let grid_energy: f64 =
            grid.cell_volume() * phys.iter().flatten().map(|v| v * v).sum::<f64>();
        let coeff_energy = f.l2_norm_sq();
        assert!((grid_energy - coeff_energy).abs() <= 1e-12 * coeff_energy);
    }

    #[test]
    fn random_fields_are_hermitian() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_dealiased_field(grid, &mut rng);
        assert!(f.max_hermitian_residual() < 1e-12);
    }
}
