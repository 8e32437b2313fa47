//! One time step of the projected system.
//!
//! Semi-implicit Euler–Maruyama: the constant-coefficient viscous floor
//! `ν̄Δ` is treated implicitly (or by the exact viscous semigroup on the
//! exponential fast path), the remaining drift is explicit and the
//! transport noise enters via `Σ_n G_n(u) ΔW_n`. The state is
//! re-projected and dealiased at the end of every step.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::MAX_DIM;
use crate::noise::GSpec;
use crate::ops::{convective_div, div_a_grad, phys_to_coeffs};
use crate::projection::helmholtz_project;
use crate::solver::config::{NoiseInterpretation, Scheme, SolverConfig, SystemKind};
use crate::viscosity::ViscosityTensor;

/// Precomputed transport stencil of one noise mode: the exact spectral
/// shift of `(b_n·∇)u`, matching `NoiseFamily::transport` term by term.
enum FastTransport {
    Zero,
    /// Constant-in-space `b`: diagonal symbol `i (b·k̃)`.
    Constant { symbol: Vec<f64> },
    /// Plane-wave `b`: two shifted copies. Each side stores per-target
    /// `(source index, magnitude)` pairs (`u32::MAX` marks sources off the
    /// grid) plus whether the combined factor `b̂(±k_b)·i·(e·k̃)` is real
    /// or imaginary — it always is one of the two.
    Shift { sides: [ShiftSide; 2] },
}

struct ShiftSide {
    imag: bool,
    entries: Vec<(u32, f64)>,
}

impl ShiftSide {
    // Off-grid sources are stored as `(0, 0.0)`, so the loop is
    // branchless; a zero magnitude contributes exactly nothing.
    #[inline]
    fn apply(&self, src: &[Complex64], dst: &mut [Complex64]) {
        if self.imag {
            for (d, &(s, f)) in dst.iter_mut().zip(&self.entries) {
                let z = src[s as usize];
                *d += Complex64::new(-f * z.im, f * z.re);
            }
        } else {
            for (d, &(s, f)) in dst.iter_mut().zip(&self.entries) {
                let z = src[s as usize];
                *d += Complex64::new(f * z.re, f * z.im);
            }
        }
    }
}

/// Precomputed per-trajectory stepping machinery.
pub struct Stepper {
    pub cfg: SolverConfig,
    a_eff: ViscosityTensor,
    nu_bar: f64,
    /// Explicit remainder `a_eff − ν̄ I`, `None` when it vanishes.
    a_explicit: Option<ViscosityTensor>,
    /// Per-mode factor of the implicit/exponential viscous solve.
    solve_factors: Vec<f64>,
    transports: Vec<FastTransport>,
    /// For the linear system with isotropic constant viscosity and no
    /// `h`-coupling the explicit drift is the projected forcing, fixed in
    /// time; cache it.
    constant_drift: Option<SpectralField>,
    n_modes: usize,
}

impl Stepper {
    pub fn new(cfg: SolverConfig) -> Result<Self> {
        cfg.validate()?;
        let grid = cfg.grid;
        let a_eff = cfg.effective_viscosity()?;
        let nu_bar = a_eff.min_eigenvalue().max(0.0);

        let a_explicit = if a_eff
            .constant_isotropic_value()
            .map(|nu| (nu - nu_bar).abs() < 1e-14)
            .unwrap_or(false)
        {
            None
        } else {
            let floor = ViscosityTensor::constant_isotropic(grid.dim(), -nu_bar);
            Some(a_eff.add(&floor)?)
        };

        let solve_factors = (0..grid.len())
            .map(|idx| {
                let z = nu_bar * grid.k_sq(idx) * cfg.dt;
                match cfg.scheme {
                    Scheme::SemiImplicitEuler => 1.0 / (1.0 + z),
                    Scheme::ExponentialEuler => (-z).exp(),
                }
            })
            .collect();

        let transports =
            (0..cfg.noise.count()).map(|n| build_transport(&cfg, n)).collect();
        let n_modes = cfg.brownian_modes();
        let mut stepper =
            Stepper { cfg, a_eff, nu_bar, a_explicit, solve_factors, transports, constant_drift: None, n_modes };
        if stepper.cfg.system == SystemKind::LinearStokes
            && stepper.a_explicit.is_none()
            && stepper.cfg.noise.h().is_none()
        {
            let zero = SpectralField::zeros(stepper.cfg.grid);
            stepper.constant_drift = Some(stepper.drift_explicit_uncached(&zero));
        }
        Ok(stepper)
    }

    /// `(b_n·∇)u` via the precomputed stencil; identical to
    /// `NoiseFamily::transport` including the final dealias.
    fn transport_fast(&self, n: usize, u: &SpectralField) -> SpectralField {
        let grid = self.cfg.grid;
        let dim = grid.dim();
        let mut out = SpectralField::zeros(grid);
        match &self.transports[n] {
            FastTransport::Zero => {}
            FastTransport::Constant { symbol } => {
                for comp in 0..dim {
                    let src = u.component(comp);
                    let dst = out.component_mut(comp);
                    for idx in 0..src.len() {
                        dst[idx] = Complex64::new(0.0, symbol[idx]) * src[idx];
                    }
                }
                out.set_divfree(u.divfree());
            }
            FastTransport::Shift { sides } => {
                for comp in 0..dim {
                    let src = u.component(comp);
                    let dst = out.component_mut(comp);
                    sides[0].apply(src, dst);
                    sides[1].apply(src, dst);
                }
            }
        }
        out.dealias();
        out
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn nu_bar(&self) -> f64 {
        self.nu_bar
    }

    pub fn effective_viscosity(&self) -> &ViscosityTensor {
        &self.a_eff
    }

    /// Shared state-dependent part of `g`: `g_n(u) = γ_n · S(u)`.
    fn g_shared(&self, u: &SpectralField) -> Option<SpectralField> {
        if self.cfg.system != SystemKind::NavierStokes {
            return None;
        }
        match &self.cfg.nonlinearity.g {
            GSpec::Zero => None,
            GSpec::Linear { .. } => Some(u.clone()),
            GSpec::Quadratic { cap, .. } => {
                let grid = u.grid();
                let phys = u.to_grid_values();
                let mut scaled = vec![vec![0.0; grid.len()]; grid.dim()];
                for idx in 0..grid.len() {
                    let norm: f64 =
                        (0..grid.dim()).map(|c| phys[c][idx] * phys[c][idx]).sum::<f64>().sqrt();
                    let s = norm.min(*cap);
                    for c in 0..grid.dim() {
                        scaled[c][idx] = s * phys[c][idx];
                    }
                }
                let mut f = SpectralField::from_grid_values(grid, &scaled).expect("layout");
                f.dealias();
                Some(f)
            }
        }
    }

    /// Explicit part of the projected drift (full drift minus `ν̄Δu`).
    pub fn drift_explicit(&self, u: &SpectralField) -> SpectralField {
        match &self.constant_drift {
            Some(d) => d.clone(),
            None => self.drift_explicit_uncached(u),
        }
    }

    fn drift_explicit_uncached(&self, u: &SpectralField) -> SpectralField {
        let grid = self.cfg.grid;
        let dim = grid.dim();
        let mut acc = SpectralField::zeros(grid);

        if let Some(a) = &self.a_explicit {
            acc.axpy(1.0, &div_a_grad(u, a));
        }

        match self.cfg.system {
            SystemKind::NavierStokes => {
                acc.axpy(-1.0, &convective_div(u));

                let preset = &self.cfg.nonlinearity;
                if preset.f0 != crate::noise::ForceSpec::Zero
                    || preset.f_flux != crate::noise::ForceSpec::Zero
                {
                    let phys = u.to_grid_values();
                    // f₀(·,u)
                    if preset.f0 != crate::noise::ForceSpec::Zero {
                        let mut vals = vec![vec![0.0; grid.len()]; dim];
                        for idx in 0..grid.len() {
                            let mut y = [0.0; MAX_DIM];
                            for c in 0..dim {
                                y[c] = phys[c][idx];
                            }
                            let out = preset.f0_eval(&y, dim);
                            for c in 0..dim {
                                vals[c][idx] = out[c];
                            }
                        }
                        let mut f = SpectralField::from_grid_values(grid, &vals).expect("layout");
                        f.dealias();
                        acc.axpy(1.0, &f);
                    }
                    // div(f(·,u))
                    if preset.f_flux != crate::noise::ForceSpec::Zero {
                        for j in 0..dim {
                            let mut vals = vec![vec![0.0; grid.len()]; dim];
                            for idx in 0..grid.len() {
                                let mut y = [0.0; MAX_DIM];
                                for c in 0..dim {
                                    y[c] = phys[c][idx];
                                }
                                let out = preset.flux_eval(j, &y, dim);
                                for c in 0..dim {
                                    vals[c][idx] = out[c];
                                }
                            }
                            for c in 0..dim {
                                let col = phys_to_coeffs(&grid, &vals[c]);
                                let dst = acc.component_mut(c);
                                for idx in 0..grid.len() {
                                    let kd = grid.deriv_wavenumber(idx);
                                    dst[idx] += Complex64::new(0.0, kd[j] as f64) * col[idx];
                                }
                            }
                        }
                        acc.dealias();
                    }
                }

                if self.cfg.noise.h().is_some() {
                    let shared = self.g_shared(u);
                    acc.axpy(1.0, &self.pressure_coupling(u, shared.as_ref()));
                }
            }
            SystemKind::LinearStokes => {
                if self.cfg.noise.h().is_some() {
                    acc.axpy(1.0, &self.pressure_coupling(u, None));
                }
                if let Some(f) = &self.cfg.forcing.f {
                    acc.axpy(1.0, f);
                }
            }
        }

        crate::projection::helmholtz_project_in_place(&mut acc);
        acc.dealias();
        acc
    }

    /// Turbulent-pressure coupling `f̃(·,u) = Σ_n [(I−ℙ)(τ_n)]·h^{·,k}_n`
    /// with `τ_n = (b_n·∇)u (+ g_n(u))`.
    fn pressure_coupling(
        &self,
        u: &SpectralField,
        g_shared: Option<&SpectralField>,
    ) -> SpectralField {
        let grid = self.cfg.grid;
        let dim = grid.dim();
        let h = self.cfg.noise.h().expect("caller checked h");
        let gammas = self.cfg.nonlinearity.gammas();
        let mut acc = SpectralField::zeros(grid);
        for n in 0..self.cfg.noise.count() {
            let mut tau = self.transport_fast(n, u);
            if let (Some(shared), Some(&gamma)) = (g_shared, gammas.get(n)) {
                tau.axpy(gamma, shared);
            }
            let projected = helmholtz_project(&tau);
            let mut residual = tau;
            residual.axpy(-1.0, &projected);
            // f̃^k += Σ_j residual^j h^{j,k}_n
            for k in 0..dim {
                for j in 0..dim {
                    let hjk = h[n][j][k];
                    if hjk == 0.0 {
                        continue;
                    }
                    let src = residual.component(j).to_vec();
                    let dst = acc.component_mut(k);
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d += hjk * s;
                    }
                }
            }
        }
        acc
    }

    /// Full projected drift including the viscous floor, for audits and
    /// the public `drift` operation.
    pub fn drift_full(&self, u: &SpectralField) -> SpectralField {
        let grid = self.cfg.grid;
        let mut out = self.drift_explicit(u);
        if self.nu_bar > 0.0 {
            for c in 0..grid.dim() {
                let src = u.component(c).to_vec();
                let dst = out.component_mut(c);
                for idx in 0..grid.len() {
                    dst[idx] -= self.nu_bar * grid.k_sq(idx) * src[idx];
                }
            }
        }
        out.set_divfree(true);
        out
    }

    /// Diffusion fields `G_n(u) = ℙ[(b_n·∇)u + g_n(·,u)]`, one per
    /// Brownian direction.
    pub fn diffusion(&self, u: &SpectralField) -> Vec<SpectralField> {
        let grid = self.cfg.grid;
        let shared = self.g_shared(u);
        let gammas = self.cfg.nonlinearity.gammas();
        let mut out = Vec::with_capacity(self.n_modes);
        for n in 0..self.n_modes {
            let mut field = if n < self.cfg.noise.count() {
                self.transport_fast(n, u)
            } else {
                SpectralField::zeros(grid)
            };
            match self.cfg.system {
                SystemKind::NavierStokes => {
                    if let (Some(sh), Some(&gamma)) = (shared.as_ref(), gammas.get(n)) {
                        field.axpy(gamma, sh);
                    }
                }
                SystemKind::LinearStokes => {
                    if let Some(g) = self.cfg.forcing.g.get(n) {
                        field.axpy(1.0, g);
                    }
                }
            }
            crate::projection::helmholtz_project_in_place(&mut field);
            field.dealias();
            out.push(field);
        }
        out
    }

    /// Advance by one step with given increments. Returns the new state
    /// together with the (projected) explicit drift and diffusion fields
    /// actually used, so observers can reconstruct the discrete identity.
    pub fn step(
        &self,
        u: &SpectralField,
        increments: &[f64],
    ) -> (SpectralField, SpectralField, Vec<SpectralField>) {
        debug_assert_eq!(increments.len(), self.n_modes);
        let grid = self.cfg.grid;
        let drift = self.drift_explicit(u);
        let diffusions = self.diffusion(u);
        let mut v = u.clone();
        v.axpy(self.cfg.dt, &drift);
        for (g, &dw) in diffusions.iter().zip(increments) {
            v.axpy(dw, g);
        }
        for c in 0..grid.dim() {
            let comp = v.component_mut(c);
            for (z, &s) in comp.iter_mut().zip(&self.solve_factors) {
                *z *= s;
            }
        }
        crate::projection::helmholtz_project_in_place(&mut v);
        v.dealias();
        (v, drift, diffusions)
    }
}

/// Precompute the spectral stencil of `(b_n·∇)·` for one noise mode.
fn build_transport(cfg: &SolverConfig, n: usize) -> FastTransport {
    use crate::noise::ModePhase;
    let grid = cfg.grid;
    let dim = grid.dim();
    let tables = crate::tables::grid_tables(&grid);
    let mode = &cfg.noise.modes()[n];
    let zero_k = (0..dim).all(|ax| mode.wavevector[ax] == 0);

    if zero_k {
        let c = match mode.phase {
            ModePhase::Cos => mode.amplitude,
            ModePhase::Sin => return FastTransport::Zero,
        };
        let symbol = (0..grid.len())
            .map(|idx| {
                let k = &tables.deriv_k[idx];
                c * (0..dim).map(|ax| mode.polarization[ax] * k[ax]).sum::<f64>()
            })
            .collect();
        return FastTransport::Constant { symbol };
    }

    // b̂(±k_b)·i·ek: cosine carriers give a purely imaginary factor
    // (A/2)·i·ek on both sides; sine carriers give the real factors
    // ±(A/2)·ek.
    let a2 = 0.5 * mode.amplitude;
    let (imag, mag_plus, mag_minus) = match mode.phase {
        ModePhase::Cos => (true, a2, a2),
        ModePhase::Sin => (false, a2, -a2),
    };
    let nn = grid.n() as i64;
    let halfn = nn / 2;
    let build_side = |sign: i64, mag: f64| {
        let mut entries = vec![(0u32, 0.0f64); grid.len()];
        for (idx, entry) in entries.iter_mut().enumerate() {
            let m = grid.wavenumber(idx);
            let mut srck = [0i64; crate::grid::MAX_DIM];
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
            let sidx = grid.index_of_wavenumber(&srck[..dim]).expect("in range");
            let kd = &tables.deriv_k[sidx];
            let ek: f64 = (0..dim).map(|ax| mode.polarization[ax] * kd[ax]).sum();
            *entry = (sidx as u32, mag * ek);
        }
        ShiftSide { imag, entries }
    };
    let plus = build_side(1, mag_plus);
    let minus = build_side(-1, mag_minus);
    FastTransport::Shift { sides: [plus, minus] }
}

/// Projected drift of Eq-form `ℙ[div(a·∇u) − div(u⊗u) + f₀ + div f + f̃]`.
pub fn drift(u: &SpectralField, cfg: &SolverConfig) -> Result<SpectralField> {
    let stepper = Stepper::new(cfg.clone())?;
    Ok(stepper.drift_full(u))
}

/// Stochastic fields `ℙ[(b_n·∇)u + g_n(·,u)]`, one per noise direction.
pub fn diffusion(u: &SpectralField, cfg: &SolverConfig) -> Result<Vec<SpectralField>> {
    let stepper = Stepper::new(cfg.clone())?;
    Ok(stepper.diffusion(u))
}

/// Single Euler–Maruyama step in Itô mode.
pub fn step_ito(
    u: &SpectralField,
    cfg: &SolverConfig,
    increments: &[f64],
) -> Result<SpectralField> {
    if cfg.interpretation != NoiseInterpretation::Ito {
        return Err(Error::config("step_ito requires an Ito-mode configuration"));
    }
    let stepper = Stepper::new(cfg.clone())?;
    Ok(stepper.step(u, increments).0)
}

/// Single step in Stratonovich mode: the Itô step with `a` replaced by
/// `a + a_b`.
pub fn step_stratonovich(
    u: &SpectralField,
    cfg: &SolverConfig,
    increments: &[f64],
) -> Result<SpectralField> {
    let mut cfg = cfg.clone();
    cfg.interpretation = NoiseInterpretation::Stratonovich;
    let stepper = Stepper::new(cfg)?;
    Ok(stepper.step(u, increments).0)
}
