//! Kraichnan-type transport-noise families.
//!
//! A family is a finite list of divergence-free fields `b_n`, one per
//! scalar Brownian direction, realized as polarized trigonometric modes
//! `b_n(x) = A|k|^{-ζ} e cos(k·x)` (or `sin`) with polarization `e ⊥ k`.
//! Finitely many modes keep every norm exactly computable while the decay
//! exponent `ζ` tunes the effective roughness.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::{TorusGrid, MAX_DIM};
use crate::viscosity::{SymMatrix, TensorProvenance, ViscosityTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModePhase {
    Cos,
    Sin,
}

/// One polarized plane-wave member `b_n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NoiseMode {
    pub wavevector: [i64; MAX_DIM],
    pub polarization: [f64; MAX_DIM],
    pub amplitude: f64,
    pub phase: ModePhase,
}

impl NoiseMode {
    /// Pointwise value of the mode at `x`.
    pub fn evaluate(&self, dim: usize, x: &[f64]) -> [f64; MAX_DIM] {
        let mut arg = 0.0;
        for ax in 0..dim {
            arg += self.wavevector[ax] as f64 * x[ax];
        }
        let osc = match self.phase {
            ModePhase::Cos => arg.cos(),
            ModePhase::Sin => arg.sin(),
        };
        let mut out = [0.0; MAX_DIM];
        for ax in 0..dim {
            out[ax] = self.amplitude * self.polarization[ax] * osc;
        }
        out
    }

    fn dot_k_pol(&self, dim: usize) -> f64 {
        (0..dim).map(|ax| self.wavevector[ax] as f64 * self.polarization[ax]).sum()
    }

    /// `|k|` of the carrier wavevector.
    pub fn k_norm(&self, dim: usize) -> f64 {
        (0..dim).map(|ax| (self.wavevector[ax] * self.wavevector[ax]) as f64).sum::<f64>().sqrt()
    }
}

/// Finite family of transport-noise fields plus optional `h` couplings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NoiseFamily {
    dim: usize,
    modes: Vec<NoiseMode>,
    /// Optional constant `h^{i,j}_n` matrix per mode (row index i, col j).
    h: Option<Vec<SymMatrixLike>>,
    /// Marked true only for deliberately non-autonomous variants; the
    /// Stratonovich correction refuses such families.
    time_dependent: bool,
}

/// Plain `d×d` matrix (not necessarily symmetric) for the `h` coupling.
pub type SymMatrixLike = [[f64; MAX_DIM]; MAX_DIM];

impl NoiseFamily {
    pub fn empty(dim: usize) -> Self {
        NoiseFamily { dim, modes: Vec::new(), h: None, time_dependent: false }
    }

    pub fn from_modes(dim: usize, modes: Vec<NoiseMode>) -> Result<Self> {
        let fam = NoiseFamily { dim, modes, h: None, time_dependent: false };
        fam.check_divergence_free()?;
        Ok(fam)
    }

    /// Family of constant-in-space fields (wavevector zero).
    pub fn constant_fields(dim: usize, vectors: &[[f64; MAX_DIM]]) -> Self {
        let modes = vectors
            .iter()
            .map(|v| NoiseMode {
                wavevector: [0; MAX_DIM],
                polarization: *v,
                amplitude: 1.0,
                phase: ModePhase::Cos,
            })
            .collect();
        NoiseFamily { dim, modes, h: None, time_dependent: false }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[NoiseMode] {
        &self.modes
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn time_dependent(&self) -> bool {
        self.time_dependent
    }

    /// Tag the family as `(t,ω)`-dependent (refused by the Stratonovich path).
    pub fn set_time_dependent(&mut self, flag: bool) {
        self.time_dependent = flag;
    }

    pub fn h(&self) -> Option<&[SymMatrixLike]> {
        self.h.as_deref()
    }

    pub fn with_constant_h(mut self, h: Vec<SymMatrixLike>) -> Result<Self> {
        if h.len() != self.modes.len() {
            return Err(Error::config("h must supply one matrix per noise mode"));
        }
        self.h = Some(h);
        Ok(self)
    }

    /// All fields constant in space (only `k = 0` carriers).
    pub fn is_constant_in_space(&self) -> bool {
        self.modes.iter().all(|m| (0..self.dim).all(|ax| m.wavevector[ax] == 0))
    }

    pub fn max_mode_component(&self) -> i64 {
        self.modes
            .iter()
            .flat_map(|m| (0..self.dim).map(move |ax| m.wavevector[ax].abs()))
            .max()
            .unwrap_or(0)
    }

    fn check_divergence_free(&self) -> Result<()> {
        for (n, m) in self.modes.iter().enumerate() {
            let dot = m.dot_k_pol(self.dim).abs();
            let knorm = m.k_norm(self.dim);
            if dot > 1e-12 * knorm.max(1.0) {
                return Err(Error::config(format!(
                    "noise mode {n} is not divergence-free: |k·e| = {dot:e}"
                )));
            }
        }
        Ok(())
    }

    /// Per-mode divergence residual `|Σ_j k_j b̂_n^j(k)|`, worst mode.
    pub fn max_divergence_residual(&self) -> f64 {
        self.modes.iter().map(|m| m.dot_k_pol(self.dim).abs() * m.amplitude.abs()).fold(0.0, f64::max)
    }

    /// Measured `sup_x ‖(b_n(x))_n‖_{ℓ²}` on the given grid.
    pub fn measured_sup_l2(&self, grid: TorusGrid) -> f64 {
        let mut worst: f64 = 0.0;
        for idx in 0..grid.len() {
            let x = grid.point(idx);
            let mut sq = 0.0;
            for m in &self.modes {
                let v = m.evaluate(self.dim, &x[..self.dim]);
                sq += (0..self.dim).map(|ax| v[ax] * v[ax]).sum::<f64>();
            }
            worst = worst.max(sq);
        }
        worst.sqrt()
    }

    /// Exact `‖b‖²_{H^{s,2}(ℓ²)} = Σ_n (1+|k_n|²)^s ‖b_n‖²_{L²}`.
    pub fn h_norm_sq(&self, s: f64) -> f64 {
        let vol = crate::grid::PERIOD.powi(self.dim as i32);
        self.modes
            .iter()
            .map(|m| {
                let ksq = m.k_norm(self.dim).powi(2);
                let polsq: f64 = (0..self.dim).map(|ax| m.polarization[ax].powi(2)).sum();
                let mass = if ksq == 0.0 {
                    match m.phase {
                        ModePhase::Cos => m.amplitude.powi(2) * polsq * vol,
                        ModePhase::Sin => 0.0,
                    }
                } else {
                    // ∫ cos²(k·x) dx = ∫ sin²(k·x) dx = vol/2 for k ≠ 0
                    m.amplitude.powi(2) * polsq * vol / 2.0
                };
                (1.0 + ksq).powf(s) * mass
            })
            .sum()
    }

    /// `ℓ²` bound of the `h` family, `sup_{i,j} ‖(h^{i,j}_n)_n‖_{ℓ²}`.
    pub fn h_l2_bound(&self) -> f64 {
        match &self.h {
            None => 0.0,
            Some(hs) => {
                let mut worst: f64 = 0.0;
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        let sq: f64 = hs.iter().map(|m| m[i][j] * m[i][j]).sum();
                        worst = worst.max(sq.sqrt());
                    }
                }
                worst
            }
        }
    }

    /// Exact transport term `(b_n·∇)u` as a spectral mode shift, dealiased.
    pub fn transport(&self, n: usize, u: &SpectralField) -> SpectralField {
        let grid = u.grid();
        let dim = grid.dim();
        let mode = &self.modes[n];
        let mut out = SpectralField::zeros(grid);
        let zero_k = (0..dim).all(|ax| mode.wavevector[ax] == 0);

        if zero_k {
            let c = match mode.phase {
                ModePhase::Cos => mode.amplitude,
                ModePhase::Sin => 0.0,
            };
            for comp in 0..dim {
                let src = u.component(comp);
                let dst = out.component_mut(comp);
                for idx in 0..grid.len() {
                    let k = grid.deriv_wavenumber(idx);
                    let e_dot_k: f64 =
                        (0..dim).map(|ax| mode.polarization[ax] * k[ax] as f64).sum();
                    dst[idx] = Complex64::new(0.0, c * e_dot_k) * src[idx];
                }
            }
            out.set_divfree(u.divfree());
            out.dealias();
            return out;
        }

        // b̂(±k_b) coefficients: cos → (A/2, A/2); sin → (-iA/2, +iA/2).
        let half = Complex64::new(0.5 * mode.amplitude, 0.0);
        let (c_plus, c_minus) = match mode.phase {
            ModePhase::Cos => (half, half),
            ModePhase::Sin => (half * Complex64::new(0.0, -1.0), half * Complex64::new(0.0, 1.0)),
        };

        let shifts = [(1i64, c_plus), (-1i64, c_minus)];
        let nn = grid.n() as i64;
        let halfn = nn / 2;
        for comp in 0..dim {
            let src = u.component(comp);
            let dst = out.component_mut(comp);
            for idx in 0..grid.len() {
                let m = grid.wavenumber(idx);
                for (sign, c) in shifts {
                    // source mode m' = m - sign * k_b
                    let mut srck = [0i64; MAX_DIM];
                    let mut inside = true;
                    for ax in 0..dim {
                        let v = m[ax] - sign * mode.wavevector[ax];
                        if v < -halfn || v >= halfn {
                            inside = false;
                            break;
                        }
                        srck[ax] = v;
                    }
                    if !inside {
                        continue;
                    }
                    let sidx = grid.index_of_wavenumber(&srck[..dim]).unwrap();
                    let kd = grid.deriv_wavenumber(sidx);
                    let e_dot_k: f64 =
                        (0..dim).map(|ax| mode.polarization[ax] * kd[ax] as f64).sum();
                    dst[idx] += c * Complex64::new(0.0, e_dot_k) * src[sidx];
                }
            }
        }
        out.dealias();
        out
    }

    /// Itô correction tensor `a_b = ½ Σ_n b_n ⊗ b_n` evaluated on `grid`.
    ///
    /// Refuses time-dependent families: the Stratonovich conversion formula
    /// requires `b_n` constant in `(t, ω)` and divergence-free.
    pub fn ito_correction(&self, grid: TorusGrid) -> Result<ViscosityTensor> {
        if self.time_dependent {
            return Err(Error::unsupported(
                "Ito correction requires (t,ω)-independent noise; Stratonovich conversion refused",
            ));
        }
        self.check_divergence_free()?;
        let dim = self.dim;
        if self.is_constant_in_space() {
            let mut m = SymMatrix::zero(dim);
            for mode in &self.modes {
                let v = mode.evaluate(dim, &[0.0; MAX_DIM][..dim]);
                for i in 0..dim {
                    for j in 0..dim {
                        m.entries[i][j] += 0.5 * v[i] * v[j];
                    }
                }
            }
            let mut t = ViscosityTensor::constant(m)?;
            t.provenance = TensorProvenance::ItoCorrectionIncluded;
            return Ok(t);
        }
        let mut values = Vec::with_capacity(grid.len());
        for idx in 0..grid.len() {
            let x = grid.point(idx);
            let mut m = SymMatrix::zero(dim);
            for mode in &self.modes {
                let v = mode.evaluate(dim, &x[..dim]);
                for i in 0..dim {
                    for j in 0..dim {
                        m.entries[i][j] += 0.5 * v[i] * v[j];
                    }
                }
            }
            values.push(m);
        }
        let mut t = ViscosityTensor::gridded(grid, values)?;
        t.mark_ito_included();
        Ok(t)
    }
}

/// Parabolicity margin: smallest eigenvalue of `a(x) − a_b(x)` over the grid.
///
/// A nonpositive value is reported, not an error, so the degenerate
/// boundary can be explored.
pub fn coercivity_nu(a: &ViscosityTensor, family: &NoiseFamily, grid: TorusGrid) -> f64 {
    if family.is_empty() {
        return a.min_eigenvalue();
    }
    let a_b = family.ito_correction(grid).expect("autonomous family");
    let mut worst = f64::INFINITY;
    for idx in 0..grid.len() {
        let diff = a.at(idx).sub(&a_b.at(idx));
        worst = worst.min(diff.min_eigenvalue());
    }
    worst
}

/// Synthesize a Kraichnan family of `n_b` polarized modes with spectral
/// amplitude decay `A |k|^{-ζ}`.
///
/// Wavevectors are drawn shell by shell (`|k|²` ascending, components
/// descending within a shell, one representative per `±k` pair); each
/// wavevector yields `cos`/`sin` phases for every polarization direction.
/// The seed only randomizes the 3-D polarization bases, so a family is
/// reproducible from `(d, n_b, ζ, A, seed)`.
pub fn synthesize_kraichnan(
    dim: usize,
    n_b: usize,
    zeta: f64,
    amplitude: f64,
    seed: u64,
) -> Result<NoiseFamily> {
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(Error::config("noise dimension must be 2 or 3"));
    }
    if n_b == 0 {
        return Err(Error::config("noise family needs at least one mode"));
    }
    if zeta <= 0.0 {
        return Err(Error::config("spectrum exponent zeta must be positive"));
    }
    const MAX_SHELL_RADIUS: i64 = 16;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b72_6169_6368_6e61);

    // Enumerate ±k representatives ordered by shell.
    let mut reps: Vec<[i64; MAX_DIM]> = Vec::new();
    let r = MAX_SHELL_RADIUS;
    let mut push = |k: [i64; MAX_DIM]| {
        let first_nonzero = (0..dim).map(|ax| k[ax]).find(|&v| v != 0).unwrap_or(0);
        if first_nonzero > 0 {
            reps.push(k);
        }
    };
    if dim == 2 {
        for k1 in -r..=r {
            for k2 in -r..=r {
                push([k1, k2, 0]);
            }
        }
    } else {
        for k1 in -r..=r {
            for k2 in -r..=r {
                for k3 in -r..=r {
                    push([k1, k2, k3]);
                }
            }
        }
    }
    reps.sort_by(|a, b| {
        let na: i64 = (0..dim).map(|ax| a[ax] * a[ax]).sum();
        let nb: i64 = (0..dim).map(|ax| b[ax] * b[ax]).sum();
        na.cmp(&nb).then(b.cmp(a))
    });

    let mut modes = Vec::with_capacity(n_b);
    'outer: for k in reps {
        let knorm = ((0..dim).map(|ax| (k[ax] * k[ax]) as f64).sum::<f64>()).sqrt();
        let amp = amplitude * knorm.powf(-zeta);
        let pols: Vec<[f64; MAX_DIM]> = if dim == 2 {
            vec![[-(k[1] as f64) / knorm, k[0] as f64 / knorm, 0.0]]
        } else {
            orthonormal_complement_3d(k, &mut rng)
        };
        for pol in pols {
            for phase in [ModePhase::Cos, ModePhase::Sin] {
                modes.push(NoiseMode { wavevector: k, polarization: pol, amplitude: amp, phase });
                if modes.len() == n_b {
                    break 'outer;
                }
            }
        }
    }
    if modes.len() < n_b {
        return Err(Error::config(format!(
            "requested {n_b} noise modes but only {} lattice directions available",
            modes.len()
        )));
    }
    NoiseFamily::from_modes(dim, modes)
}

/// Random orthonormal basis of the plane orthogonal to `k` in 3-D.
fn orthonormal_complement_3d<R: Rng>(k: [i64; MAX_DIM], rng: &mut R) -> Vec<[f64; MAX_DIM]> {
    let kf = [k[0] as f64, k[1] as f64, k[2] as f64];
    let knorm = (kf[0] * kf[0] + kf[1] * kf[1] + kf[2] * kf[2]).sqrt();
    let khat = [kf[0] / knorm, kf[1] / knorm, kf[2] / knorm];
    // Any helper not parallel to k.
    let helper = if khat[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let mut e1 = cross(khat, helper);
    normalize(&mut e1);
    let mut e2 = cross(khat, e1);
    normalize(&mut e2);
    let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    let (s, c) = theta.sin_cos();
    let r1 = [c * e1[0] + s * e2[0], c * e1[1] + s * e2[1], c * e1[2] + s * e2[2]];
    let r2 = [-s * e1[0] + c * e2[0], -s * e1[1] + c * e2[1], -s * e1[2] + c * e2[2]];
    vec![r1, r2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize(v: &mut [f64; 3]) {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    v[0] /= n;
    v[1] /= n;
    v[2] /= n;
}

/// Manifest of a noise family: everything needed to reproduce and audit it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NoiseManifest {
    pub dim: usize,
    pub count: usize,
    pub modes: Vec<NoiseMode>,
    pub measured_sup_l2: f64,
    pub h_l2_bound: f64,
    pub h_norm_sq_eta: f64,
    pub eta: f64,
    pub coercivity_nu: f64,
    pub max_divergence_residual: f64,
}

impl NoiseManifest {
    pub fn new(family: &NoiseFamily, a: &ViscosityTensor, grid: TorusGrid, eta: f64) -> Self {
        NoiseManifest {
            dim: family.dim(),
            count: family.count(),
            modes: family.modes().to_vec(),
            measured_sup_l2: family.measured_sup_l2(grid),
            h_l2_bound: family.h_l2_bound(),
            h_norm_sq_eta: family.h_norm_sq(eta),
            eta,
            coercivity_nu: coercivity_nu(a, family, grid),
            max_divergence_residual: family.max_divergence_residual(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::random_dealiased_field;
    use crate::projection::helmholtz_project;

    #[test]
    fn first_kraichnan_mode_is_polarized_cosine() {
        let fam = synthesize_kraichnan(2, 1, 1.0, 1.0, 0).unwrap();
        let m = &fam.modes()[0];
        assert_eq!(m.wavevector[..2], [1, 0]);
        assert!((m.polarization[0]).abs() < 1e-15);
        assert!((m.polarization[1] - 1.0).abs() < 1e-15);
        assert_eq!(m.phase, ModePhase::Cos);
        assert!(fam.max_divergence_residual() < 1e-12);
    }

    #[test]
    fn h_norm_matches_hand_sum_for_two_modes() {
        let fam = synthesize_kraichnan(2, 2, 1.5, 2.0, 0).unwrap();
        let s = 0.75;
        let vol = crate::grid::PERIOD.powi(2);
        // Both modes sit on |k| = 1, amplitude 2·1^{-1.5} = 2.
        let expect = 2.0 * (1.0 + 1.0f64).powf(s) * 4.0 * vol / 2.0;
        assert!((fam.h_norm_sq(s) - expect).abs() < 1e-10 * expect);
    }

    #[test]
    fn large_zeta_concentrates_mass_on_first_shell() {
        let fam = synthesize_kraichnan(2, 12, 40.0, 1.0, 0).unwrap();
        let grid = TorusGrid::new(2, 32).unwrap();
        let measured = fam.measured_sup_l2(grid);
        // First shell: 4 scalar directions (k=(1,0) and (0,1), cos+sin each)
        // with amplitude 1; cos²+sin² = 1 per wavevector, so sup ℓ² = √2.
        let analytic = 2.0f64.sqrt();
        assert!(
            (measured - analytic).abs() < 1e-6,
            "measured {measured} vs analytic {analytic}"
        );
    }

    #[test]
    fn synthesized_modes_divergence_free_in_3d() {
        let fam = synthesize_kraichnan(3, 10, 1.0, 0.5, 42).unwrap();
        assert!(fam.max_divergence_residual() < 1e-12);
        assert_eq!(fam.count(), 10);
    }

    #[test]
    fn ito_correction_of_single_constant_field() {
        let fam = NoiseFamily::constant_fields(2, &[[2.0, 0.0, 0.0]]);
        let grid = TorusGrid::new(2, 8).unwrap();
        let a_b = fam.ito_correction(grid).unwrap();
        let m = a_b.is_constant().unwrap();
        assert!((m.entries[0][0] - 2.0).abs() < 1e-14);
        assert!(m.entries[0][1].abs() < 1e-14);
        assert!(m.entries[1][1].abs() < 1e-14);
    }

    #[test]
    fn ito_correction_of_cosine_mode_is_pointwise_square() {
        // b₁ = (0, cos x₁) → a_b(x) = diag(0, cos²(x₁)/2)
        let grid = TorusGrid::new(2, 16).unwrap();
        let fam = NoiseFamily::from_modes(
            2,
            vec![NoiseMode {
                wavevector: [1, 0, 0],
                polarization: [0.0, 1.0, 0.0],
                amplitude: 1.0,
                phase: ModePhase::Cos,
            }],
        )
        .unwrap();
        let a_b = fam.ito_correction(grid).unwrap();
        for idx in 0..grid.len() {
            let x = grid.point(idx);
            let m = a_b.at(idx);
            assert!(m.entries[0][0].abs() < 1e-14);
            assert!((m.entries[1][1] - 0.5 * x[0].cos().powi(2)).abs() < 1e-13);
            assert!(m.min_eigenvalue() > -1e-12);
        }
    }

    #[test]
    fn two_orthogonal_constant_modes_give_isotropic_correction() {
        let c = 0.8;
        let fam = NoiseFamily::constant_fields(2, &[[c, 0.0, 0.0], [0.0, c, 0.0]]);
        let grid = TorusGrid::new(2, 8).unwrap();
        let a_b = fam.ito_correction(grid).unwrap();
        let m = a_b.is_constant().unwrap();
        assert!((m.entries[0][0] - c * c / 2.0).abs() < 1e-14);
        assert!((m.entries[1][1] - c * c / 2.0).abs() < 1e-14);
        assert!(m.entries[0][1].abs() < 1e-14);
    }

    #[test]
    fn correction_refuses_time_dependent_families() {
        let mut fam = NoiseFamily::constant_fields(2, &[[1.0, 0.0, 0.0]]);
        fam.set_time_dependent(true);
        let grid = TorusGrid::new(2, 8).unwrap();
        assert!(fam.ito_correction(grid).is_err());
    }

    #[test]
    fn coercivity_examples() {
        let grid = TorusGrid::new(2, 8).unwrap();
        let a = ViscosityTensor::constant_isotropic(2, 1.0);
        // a = I, b₁ = (1,0) constant → eigenvalues of diag(1/2, 1).
        let fam = NoiseFamily::constant_fields(2, &[[1.0, 0.0, 0.0]]);
        assert!((coercivity_nu(&a, &fam, grid) - 0.5).abs() < 1e-14);
        // b = 0 → ν̂ = 1.
        let empty = NoiseFamily::empty(2);
        assert!((coercivity_nu(&a, &empty, grid) - 1.0).abs() < 1e-14);
        // a = a_b exactly → ν̂ = 0.
        let ab = fam.ito_correction(grid).unwrap();
        assert!(coercivity_nu(&ab, &fam, grid).abs() < 1e-14);
    }

    #[test]
    fn coercivity_monotone_in_noise_strength() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let a = ViscosityTensor::constant_isotropic(2, 1.0);
        let mut last = f64::INFINITY;
        for theta in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let fam = synthesize_kraichnan(2, 6, 1.0, theta, 3).unwrap();
            let nu = coercivity_nu(&a, &fam, grid);
            assert!(nu <= last + 1e-12);
            last = nu;
        }
    }

    #[test]
    fn transport_matches_pseudospectral_product() {
        let grid = TorusGrid::new(2, 32).unwrap();
        let fam = synthesize_kraichnan(2, 4, 1.0, 0.7, 9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let u = helmholtz_project(&random_dealiased_field(grid, &mut rng));
        for n in 0..fam.count() {
            let shifted = fam.transport(n, &u);
            // independent oracle: evaluate b_n on the grid and multiply pointwise
            let phys_u = u.to_grid_values();
            let mut deriv_phys = Vec::new();
            for ax in 0..2 {
                deriv_phys.push(u.derivative(ax).unwrap().to_grid_values());
            }
            let mut product = vec![vec![0.0; grid.len()]; 2];
            for idx in 0..grid.len() {
                let x = grid.point(idx);
                let b = fam.modes()[n].evaluate(2, &x[..2]);
                for comp in 0..2 {
                    product[comp][idx] = b[0] * deriv_phys[0][comp][idx] + b[1] * deriv_phys[1][comp][idx];
                }
            }
            let _ = phys_u;
            let mut oracle = SpectralField::from_grid_values(grid, &product).unwrap();
            oracle.dealias();
            let mut diff = shifted.clone();
            diff.axpy(-1.0, &oracle);
            assert!(
                diff.l2_norm() <= 1e-11 * oracle.l2_norm().max(1e-12),
                "mode {n}: {} vs {}",
                diff.l2_norm(),
                oracle.l2_norm()
            );
        }
    }
}
