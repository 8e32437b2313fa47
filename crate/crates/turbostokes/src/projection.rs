//! Helmholtz–Leray projection and the auxiliary elliptic solve.
//!
//! In Fourier variables the projection removes the longitudinal part:
//! `(ℙf)̂ⁿ(k) = f̂ⁿ(k) − Σ_j (k_j k_n / |k|²) f̂ʲ(k)` with the zero mode
//! unchanged. Equivalently `ℙf = f − ∇ℚf` where `ψ = ℚf` solves
//! `Δψ = div f`, `⟨1, ψ⟩ = 0`. All three operators use the derivative
//! wavenumbers (Nyquist line zeroed), so the decomposition holds exactly
//! mode by mode.

use num_complex::Complex64;

use crate::field::{ScalarSpectralField, SpectralField};

/// Orthogonal projection onto divergence-free fields.
pub fn helmholtz_project(f: &SpectralField) -> SpectralField {
    let mut out = f.clone();
    helmholtz_project_in_place(&mut out);
    out
}

/// In-place variant of [`helmholtz_project`].
pub fn helmholtz_project_in_place(f: &mut SpectralField) {
    let grid = f.grid();
    let dim = grid.dim();
    let tables = crate::tables::grid_tables(&grid);
    for idx in 0..grid.len() {
        let ksq = tables.deriv_ksq[idx];
        if ksq == 0.0 {
            continue;
        }
        let k = &tables.deriv_k[idx];
        let mut kdotf = Complex64::default();
        for ax in 0..dim {
            kdotf += k[ax] * f.component(ax)[idx];
        }
        let scale = kdotf / ksq;
        for ax in 0..dim {
            f.component_mut(ax)[idx] -= k[ax] * scale;
        }
    }
    f.set_divfree(true);
}

/// Mean-zero solution `ψ` of `Δψ = div f`, so that `ℙf = f − ∇ψ`.
pub fn q_solve(f: &SpectralField) -> ScalarSpectralField {
    let grid = f.grid();
    let dim = grid.dim();
    let mut psi = ScalarSpectralField::zeros(grid);
    for idx in 0..grid.len() {
        let k = grid.deriv_wavenumber(idx);
        let ksq: f64 = (0..dim).map(|ax| (k[ax] * k[ax]) as f64).sum();
        if ksq == 0.0 {
            continue;
        }
        let mut kdotf = Complex64::default();
        for ax in 0..dim {
            kdotf += Complex64::new(k[ax] as f64, 0.0) * f.component(ax)[idx];
        }
        // div f has coefficient i(k·f̂); dividing by -|k|² yields ψ̂.
        psi.coeffs_mut()[idx] = Complex64::new(0.0, 1.0) * kdotf / (-ksq);
    }
    psi
}

/// Spectral gradient of a scalar field.
pub fn gradient(psi: &ScalarSpectralField) -> SpectralField {
    let grid = psi.grid();
    let mut out = SpectralField::zeros(grid);
    for ax in 0..grid.dim() {
        let d = psi.derivative(ax).expect("axis in range");
        out.component_mut(ax).copy_from_slice(d.coeffs());
    }
    out
}

/// Spectral divergence of a vector field.
pub fn divergence(f: &SpectralField) -> ScalarSpectralField {
    let grid = f.grid();
    let mut out = ScalarSpectralField::zeros(grid);
    for idx in 0..grid.len() {
        let k = grid.deriv_wavenumber(idx);
        let mut div = Complex64::default();
        for ax in 0..grid.dim() {
            div += Complex64::new(0.0, k[ax] as f64) * f.component(ax)[idx];
        }
        out.coeffs_mut()[idx] = div;
    }
    out
}
