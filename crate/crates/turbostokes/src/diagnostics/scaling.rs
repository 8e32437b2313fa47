//! Pathwise scaling-invariance check.
//!
//! A base trajectory on `(grid n, step h)` is coupled to a companion run
//! of the scaled data `u_{0,λ}` on `(grid √λ·n, step h/λ)` driven by the
//! scaled noise `β^n_{t,λ} = λ^{-1/2} w^n_{λt}`. With `h' = h/λ` the
//! coupling is one base increment per companion step, so matched states
//! can be compared directly: `v(t/λ)` against the scaling map applied to
//! `u(t)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::TorusGrid;
use crate::noise::{BrownianDriver, GSpec};
use crate::projection::helmholtz_project;
use crate::solver::{SolverConfig, Stepper};
use crate::spaces::scaling::{scaling_transform, sqrt_lambda};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalingCheckReport {
    pub lambda: f64,
    /// Comparison times on the base clock.
    pub matched_times: Vec<f64>,
    pub rel_errors: Vec<f64>,
    pub max_rel_error: f64,
}

fn check_preconditions(cfg: &SolverConfig, lambda: f64) -> Result<u32> {
    let s = sqrt_lambda(lambda)?;
    if !cfg.noise.is_empty() && !cfg.noise.is_constant_in_space() {
        return Err(Error::config(
            "scaling check requires b constant in x so the noise scales trivially",
        ));
    }
    match &cfg.nonlinearity.g {
        GSpec::Zero => {}
        GSpec::Quadratic { cap, .. } if *cap >= 1e9 => {}
        _ => {
            return Err(Error::config(
                "scaling check needs g = 0 or an (uncapped) quadratic-consistent preset",
            ))
        }
    }
    if cfg.viscosity.is_constant().is_none() {
        return Err(Error::config("scaling check requires a constant viscosity tensor"));
    }
    if !cfg.forcing.is_zero() {
        return Err(Error::config("scaling check runs without exogenous forcing"));
    }
    Ok(s)
}

/// Run the coupled pair and report relative `L²` errors at matched times.
pub fn scaling_check(
    u0: &SpectralField,
    cfg: &SolverConfig,
    lambda: f64,
    compare_every: usize,
) -> Result<ScalingCheckReport> {
    let s = check_preconditions(cfg, lambda)?;
    let steps = cfg.steps();
    let compare_every = compare_every.max(1);

    let mut fine_cfg = cfg.clone();
    fine_cfg.grid = TorusGrid::new(cfg.grid.dim(), cfg.grid.n() * s as usize)?;
    fine_cfg.dt = cfg.dt / lambda;
    fine_cfg.t_end = cfg.t_end / lambda;

    let base_stepper = Stepper::new(cfg.clone())?;
    let fine_stepper = Stepper::new(fine_cfg.clone())?;
    let modes = base_stepper.n_modes();

    let driver = BrownianDriver::new(cfg.seed, cfg.dt)?;
    let base_increments =
        if modes > 0 { driver.increments(0, steps, modes) } else { vec![Vec::new(); steps] };
    let scale_w = lambda.powf(-0.5);

    let mut u = helmholtz_project(u0);
    u.dealias();
    let mut v = scaling_transform(&u, lambda)?;

    let mut report = ScalingCheckReport {
        lambda,
        matched_times: Vec::new(),
        rel_errors: Vec::new(),
        max_rel_error: 0.0,
    };
    let compare = |t: f64, u: &SpectralField, v: &SpectralField, rep: &mut ScalingCheckReport| -> Result<()> {
        let mapped = scaling_transform(u, lambda)?;
        let mut diff = v.clone();
        diff.axpy(-1.0, &mapped);
        let denom = mapped.l2_norm();
        let err = if denom > 0.0 { diff.l2_norm() / denom } else { diff.l2_norm() };
        rep.matched_times.push(t);
        rep.rel_errors.push(err);
        rep.max_rel_error = rep.max_rel_error.max(err);
        Ok(())
    };

    for step in 0..steps {
        let dw = &base_increments[step];
        let dw_scaled: Vec<f64> = dw.iter().map(|x| x * scale_w).collect();
        u = base_stepper.step(&u, dw).0;
        v = fine_stepper.step(&v, &dw_scaled).0;
        if (step + 1) % compare_every == 0 || step + 1 == steps {
            compare((step + 1) as f64 * cfg.dt, &u, &v, &mut report)?;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoiseFamily;
    use crate::solver::taylor_green;

    #[test]
    fn lambda_one_error_is_exactly_zero() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut cfg = SolverConfig::basic(grid, 1e-3, 0.02, 0.5, 3);
        cfg.noise = NoiseFamily::constant_fields(2, &[[0.3, 0.0, 0.0]]);
        let u0 = taylor_green(grid, 1.0);
        let rep = scaling_check(&u0, &cfg, 1.0, 5).unwrap();
        assert!(rep.rel_errors.iter().all(|&e| e == 0.0), "{:?}", rep.rel_errors);
    }

    #[test]
    fn deterministic_coupling_is_tight() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let cfg = SolverConfig::basic(grid, 2e-3, 0.1, 0.5, 3);
        let u0 = taylor_green(grid, 1.0);
        let rep = scaling_check(&u0, &cfg, 4.0, 10).unwrap();
        assert!(rep.max_rel_error < 5e-3, "max rel error {}", rep.max_rel_error);
    }

    #[test]
    fn variable_b_is_rejected() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut cfg = SolverConfig::basic(grid, 1e-3, 0.02, 0.5, 3);
        cfg.noise = crate::noise::synthesize_kraichnan(2, 2, 1.0, 0.2, 0).unwrap();
        let u0 = taylor_green(grid, 1.0);
        assert!(scaling_check(&u0, &cfg, 4.0, 5).is_err());
    }

    #[test]
    fn capped_quadratic_is_rejected() {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut cfg = SolverConfig::basic(grid, 1e-3, 0.02, 0.5, 3);
        cfg.nonlinearity = crate::noise::NonlinearityPreset::quadratic_g(vec![0.1], 2.0);
        let u0 = taylor_green(grid, 1.0);
        assert!(scaling_check(&u0, &cfg, 4.0, 5).is_err());
    }
}
