//! Solver configuration and validation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::TorusGrid;
use crate::noise::{coercivity_nu, NoiseFamily, NonlinearityPreset};
use crate::projection::helmholtz_project;
use crate::viscosity::ViscosityTensor;

/// Itô or Stratonovich reading of the transport noise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoiseInterpretation {
    Ito,
    Stratonovich,
}

/// Time integrator for the stiff viscous part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// Constant-coefficient viscous floor treated implicitly.
    SemiImplicitEuler,
    /// Exact viscous semigroup; requires constant isotropic `a`.
    ExponentialEuler,
}

/// Which right-hand side to integrate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SystemKind {
    /// Full projected system with the convective term and nonlinearities.
    NavierStokes,
    /// Turbulent Stokes system: transport noise and `h`-coupling kept,
    /// convection and state nonlinearities dropped, exogenous `(f, g)`.
    LinearStokes,
}

/// Exogenous forcing for the linear system, constant in time.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Forcing {
    pub f: Option<SpectralField>,
    /// One field per Brownian direction.
    pub g: Vec<SpectralField>,
}

impl Forcing {
    pub fn is_zero(&self) -> bool {
        self.f.is_none() && self.g.is_empty()
    }
}

/// Full description of one trajectory solve.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolverConfig {
    pub grid: TorusGrid,
    pub dt: f64,
    pub t_end: f64,
    pub interpretation: NoiseInterpretation,
    pub scheme: Scheme,
    pub system: SystemKind,
    pub viscosity: ViscosityTensor,
    pub noise: NoiseFamily,
    pub nonlinearity: NonlinearityPreset,
    pub forcing: Forcing,
    /// Blow-up flag fires when the L² energy exceeds
    /// `blowup_factor · max(initial energy, 1)`.
    pub blowup_factor: f64,
    pub seed: u64,
    /// Store a field snapshot every this many steps (`0` = never).
    pub snapshot_every: usize,
    /// Additional `(s, q)` Bessel norms recorded every step.
    pub extra_norms: Vec<(f64, f64)>,
    /// Explicit opt-in for exploring the degenerate boundary `ν̂ ≤ 0`.
    pub allow_noncoercive: bool,
}

impl SolverConfig {
    /// A deterministic heat-flow style baseline the tests build on.
    pub fn basic(grid: TorusGrid, dt: f64, t_end: f64, nu: f64, seed: u64) -> Self {
        SolverConfig {
            grid,
            dt,
            t_end,
            interpretation: NoiseInterpretation::Ito,
            scheme: Scheme::SemiImplicitEuler,
            system: SystemKind::NavierStokes,
            viscosity: ViscosityTensor::constant_isotropic(grid.dim(), nu),
            noise: NoiseFamily::empty(grid.dim()),
            nonlinearity: NonlinearityPreset::zero(),
            forcing: Forcing::default(),
            blowup_factor: 1e6,
            seed,
            snapshot_every: 0,
            extra_norms: Vec::new(),
            allow_noncoercive: false,
        }
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round().max(1.0) as usize
    }

    /// Number of scalar Brownian directions driving the solve.
    pub fn brownian_modes(&self) -> usize {
        let from_g = match self.system {
            SystemKind::NavierStokes => self.nonlinearity.g_mode_count(),
            SystemKind::LinearStokes => self.forcing.g.len(),
        };
        self.noise.count().max(from_g)
    }

    /// Effective viscosity tensor of the integrated Itô system:
    /// `a` itself in Itô mode, `a + a_b` in Stratonovich mode.
    pub fn effective_viscosity(&self) -> Result<ViscosityTensor> {
        match self.interpretation {
            NoiseInterpretation::Ito => Ok(self.viscosity.clone()),
            NoiseInterpretation::Stratonovich => {
                if self.noise.is_empty() {
                    return Ok(self.viscosity.clone());
                }
                let a_b = self.noise.ito_correction(self.grid)?;
                self.viscosity.add(&a_b)
            }
        }
    }

    /// Parabolicity margin `ν̂` of the effective tensor against the noise.
    pub fn coercivity(&self) -> Result<f64> {
        Ok(coercivity_nu(&self.effective_viscosity()?, &self.noise, self.grid))
    }

    pub fn validate(&self) -> Result<()> {
        if self.dt <= 0.0 {
            return Err(Error::config("time step must be positive"));
        }
        if self.t_end <= 0.0 {
            return Err(Error::config("horizon must be positive"));
        }
        if self.noise.dim() != self.grid.dim() {
            return Err(Error::config("noise family dimension does not match grid"));
        }
        if self.viscosity.dim() != self.grid.dim() {
            return Err(Error::config("viscosity tensor dimension does not match grid"));
        }
        if self.interpretation == NoiseInterpretation::Stratonovich && self.noise.time_dependent()
        {
            return Err(Error::unsupported(
                "stratonovich mode requires (t,ω)-independent noise (Ito correction precondition)",
            ));
        }
        if self.scheme == Scheme::ExponentialEuler
            && self.viscosity.constant_isotropic_value().is_none()
        {
            return Err(Error::config(
                "exponential scheme is the constant isotropic fast path; use semi-implicit for variable a",
            ));
        }
        let cut = self.grid.dealias_cutoff();
        let maxk = self.noise.max_mode_component();
        if maxk > cut {
            return Err(Error::config(format!(
                "noise family exceeds grid capacity: mode component {maxk} above dealias cutoff {cut}"
            )));
        }
        if let Some(f) = &self.forcing.f {
            if f.grid() != self.grid {
                return Err(Error::config("forcing f lives on a different grid"));
            }
        }
        for g in &self.forcing.g {
            if g.grid() != self.grid {
                return Err(Error::config("forcing g lives on a different grid"));
            }
        }
        let nu_hat = self.coercivity()?;
        if nu_hat <= 0.0 && !self.allow_noncoercive {
            return Err(Error::config(format!(
                "coercivity margin ν̂ = {nu_hat:.3e} is not positive; set allow_noncoercive to explore the boundary"
            )));
        }
        Ok(())
    }

    /// Project the exogenous forcing onto divergence-free fields.
    pub fn project_forcing(&mut self) {
        if let Some(f) = &self.forcing.f {
            self.forcing.f = Some(helmholtz_project(f));
        }
        for g in self.forcing.g.iter_mut() {
            *g = helmholtz_project(g);
        }
    }

    /// Stable hash of the full configuration.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_string(self).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(json.as_bytes());
        let out = hasher.finalize();
        out.iter().take(16).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::synthesize_kraichnan;

    #[test]
    fn validates_basic_config() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let cfg = SolverConfig::basic(grid, 1e-3, 0.1, 0.5, 1);
        cfg.validate().unwrap();
        assert_eq!(cfg.steps(), 100);
    }

    #[test]
    fn stratonovich_with_time_dependent_noise_rejected() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut cfg = SolverConfig::basic(grid, 1e-3, 0.1, 0.5, 1);
        let mut fam = synthesize_kraichnan(2, 2, 1.0, 0.1, 0).unwrap();
        fam.set_time_dependent(true);
        cfg.noise = fam;
        cfg.interpretation = NoiseInterpretation::Stratonovich;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn noncoercive_config_needs_override() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut cfg = SolverConfig::basic(grid, 1e-3, 0.1, 0.05, 1);
        cfg.noise = synthesize_kraichnan(2, 2, 1.0, 1.0, 0).unwrap();
        assert!(cfg.validate().is_err());
        cfg.allow_noncoercive = true;
        cfg.validate().unwrap();
        assert!(cfg.coercivity().unwrap() <= 0.0);
    }

    #[test]
    fn exponential_scheme_requires_isotropic_a() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut cfg = SolverConfig::basic(grid, 1e-3, 0.1, 0.5, 1);
        cfg.scheme = Scheme::ExponentialEuler;
        cfg.validate().unwrap();
        let mut m = crate::viscosity::SymMatrix::isotropic(2, 0.5);
        m.entries[0][1] = 0.1;
        m.entries[1][0] = 0.1;
        cfg.viscosity = ViscosityTensor::constant(m).unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn stratonovich_effective_tensor_adds_correction() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut cfg = SolverConfig::basic(grid, 1e-3, 0.1, 1.0, 1);
        cfg.noise = NoiseFamily::constant_fields(2, &[[1.0, 0.0, 0.0]]);
        cfg.interpretation = NoiseInterpretation::Stratonovich;
        let eff = cfg.effective_viscosity().unwrap();
        let m = eff.is_constant().unwrap();
        assert!((m.entries[0][0] - 1.5).abs() < 1e-14);
        assert!((m.entries[1][1] - 1.0).abs() < 1e-14);
        // corrected tensor minus a_b is the original a → ν̂ = 1
        assert!((cfg.coercivity().unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn digest_is_stable_and_sensitive() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let cfg = SolverConfig::basic(grid, 1e-3, 0.1, 0.5, 1);
        let a = cfg.digest();
        let b = cfg.digest();
        assert_eq!(a, b);
        let mut cfg2 = cfg.clone();
        cfg2.seed = 2;
        assert_ne!(a, cfg2.digest());
    }
}
