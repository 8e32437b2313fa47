//! Pseudospectral calculus: dealiased products, the convective term and
//! the divergence-form viscous operator.

use num_complex::Complex64;

use crate::fft::fft_nd;
use crate::field::{ScalarSpectralField, SpectralField};
use crate::grid::TorusGrid;
use crate::viscosity::ViscosityTensor;

/// Physical samples of one spectral component.
pub(crate) fn coeffs_to_phys(grid: &TorusGrid, coeffs: &[Complex64]) -> Vec<f64> {
    let mut buf = coeffs.to_vec();
    fft_nd(grid, &mut buf, false);
    buf.iter().map(|c| c.re).collect()
}

/// Forward transform of physical samples into coefficients.
pub(crate) fn phys_to_coeffs(grid: &TorusGrid, phys: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = phys.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_nd(grid, &mut buf, true);
    let scale = 1.0 / grid.len() as f64;
    for c in buf.iter_mut() {
        *c *= scale;
    }
    buf
}

/// Dealiased pseudospectral product of two scalar fields.
pub fn product_dealiased(a: &ScalarSpectralField, b: &ScalarSpectralField) -> ScalarSpectralField {
    let grid = a.grid();
    let pa = coeffs_to_phys(&grid, a.coeffs());
    let pb = coeffs_to_phys(&grid, b.coeffs());
    let prod: Vec<f64> = pa.iter().zip(&pb).map(|(x, y)| x * y).collect();
    let mut out = ScalarSpectralField::from_grid_values(grid, &prod).expect("layout");
    out.dealias();
    out
}

/// Convective term `div(u ⊗ u) = (Σ_j ∂_j(u^j u^k))_k` with dealiased
/// products.
pub fn convective_div(u: &SpectralField) -> SpectralField {
    let grid = u.grid();
    let dim = grid.dim();
    let phys: Vec<Vec<f64>> = (0..dim).map(|c| coeffs_to_phys(&grid, u.component(c))).collect();

    // products û^j u^k, j ≤ k
    let mut prod_hat = vec![vec![Vec::new(); dim]; dim];
    for j in 0..dim {
        for k in j..dim {
            let p: Vec<f64> = phys[j].iter().zip(&phys[k]).map(|(a, b)| a * b).collect();
            prod_hat[j][k] = phys_to_coeffs(&grid, &p);
        }
    }

    let mut out = SpectralField::zeros(grid);
    for c in 0..dim {
        let dst = out.component_mut(c);
        for idx in 0..grid.len() {
            let kd = grid.deriv_wavenumber(idx);
            let mut sum = Complex64::default();
            for j in 0..dim {
                let (lo, hi) = if j <= c { (j, c) } else { (c, j) };
                sum += Complex64::new(0.0, kd[j] as f64) * prod_hat[lo][hi][idx];
            }
            dst[idx] = sum;
        }
    }
    out.dealias();
    out
}

/// Divergence-form viscous term `div(a·∇u)`.
///
/// Constant tensors stay in spectral variables; gridded tensors go through
/// dealiased physical products.
pub fn div_a_grad(u: &SpectralField, a: &ViscosityTensor) -> SpectralField {
    let grid = u.grid();
    let dim = grid.dim();
    let mut out = SpectralField::zeros(grid);

    if let Some(m) = a.is_constant() {
        for c in 0..dim {
            let src = u.component(c);
            let dst = out.component_mut(c);
            for idx in 0..grid.len() {
                let kd = grid.deriv_wavenumber(idx);
                let mut sym = 0.0;
                for i in 0..dim {
                    for j in 0..dim {
                        sym += m.entries[i][j] * (kd[i] * kd[j]) as f64;
                    }
                }
                dst[idx] = -sym * src[idx];
            }
        }
        return out;
    }

    // gridded tensor: w^i(x) = Σ_j a^{ij}(x) ∂_j u^c(x), then Σ_i ∂_i w^i
    let mut grad_phys = vec![vec![Vec::new(); dim]; dim]; // [j][c]
    for j in 0..dim {
        let du = u.derivative(j).expect("axis");
        for c in 0..dim {
            grad_phys[j][c] = coeffs_to_phys(&grid, du.component(c));
        }
    }
    for c in 0..dim {
        let mut flux_hat: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut w = vec![0.0; grid.len()];
            for (idx, wv) in w.iter_mut().enumerate() {
                let m = a.at(idx);
                for j in 0..dim {
                    *wv += m.entries[i][j] * grad_phys[j][c][idx];
                }
            }
            flux_hat.push(phys_to_coeffs(&grid, &w));
        }
        let dst = out.component_mut(c);
        for idx in 0..grid.len() {
            let kd = grid.deriv_wavenumber(idx);
            let mut sum = Complex64::default();
            for (i, fh) in flux_hat.iter().enumerate() {
                sum += Complex64::new(0.0, kd[i] as f64) * fh[idx];
            }
            dst[idx] = sum;
        }
    }
    out.dealias();
    out
}
