//! Whole-trajectory integration and ensemble running.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::SpectralField;
use crate::noise::BrownianDriver;
use crate::solver::config::{SolverConfig, SystemKind};
use crate::solver::step::Stepper;
use crate::spaces::norms::bessel_norm;

/// Everything an observer sees about one completed step.
pub struct StepContext<'a> {
    pub step: usize,
    pub time: f64,
    pub dt: f64,
    pub state: &'a SpectralField,
    pub next: &'a SpectralField,
    /// Full projected drift at `state` (explicit part plus viscous floor).
    pub drift_full: &'a SpectralField,
    pub diffusions: &'a [SpectralField],
    pub increments: &'a [f64],
}

/// Per-step hook for audits; trajectories replay deterministically, so
/// ledgers can be reconstructed by rerunning with an observer attached.
pub trait StepObserver {
    fn observe(&mut self, ctx: &StepContext<'_>);
}

impl StepObserver for () {
    fn observe(&mut self, _ctx: &StepContext<'_>) {}
}

/// How a trajectory was stopped before the horizon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlowupKind {
    /// A coefficient became NaN or infinite: genuine numerical explosion.
    NonFinite,
    /// The `L²` energy exceeded the configured cap. The true trajectory
    /// stays finite here, so `sigma` is only a lower bound on the
    /// blow-up time (a censored observation).
    EnergyCap,
}

/// Time series and metadata of one integrated path.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub config_digest: String,
    pub seed: u64,
    pub path: usize,
    pub times: Vec<f64>,
    pub l2: Vec<f64>,
    pub h1: Vec<f64>,
    /// One series per configured extra `(s, q)` norm.
    pub extra: Vec<Vec<f64>>,
    pub snapshots: Vec<(f64, SpectralField)>,
    /// Discrete blow-up proxy: first time the energy cap or a non-finite
    /// value was hit; equals the horizon when the path survived.
    pub sigma: f64,
    pub blown_up: bool,
    pub blowup_kind: Option<BlowupKind>,
    /// Initial data was not divergence-free and got projected.
    pub projected_initial: bool,
    pub final_state: SpectralField,
}

impl TrajectoryRecord {
    pub fn survived(&self) -> bool {
        !self.blown_up
    }
}

/// Integrate one path of the configured system.
pub fn run_trajectory(u0: &SpectralField, cfg: &SolverConfig, path: usize) -> Result<TrajectoryRecord> {
    run_inner(u0, cfg, path, None)
}

/// Integrate one path, reporting every step to the observer.
pub fn run_trajectory_observed(
    u0: &SpectralField,
    cfg: &SolverConfig,
    path: usize,
    observer: &mut dyn StepObserver,
) -> Result<TrajectoryRecord> {
    run_inner(u0, cfg, path, Some(observer))
}

fn run_inner(
    u0: &SpectralField,
    cfg: &SolverConfig,
    path: usize,
    mut observer: Option<&mut dyn StepObserver>,
) -> Result<TrajectoryRecord> {
    let stepper = Stepper::new(cfg.clone())?;
    let grid = cfg.grid;
    let digest = cfg.digest();

    let mut projected_initial = false;
    let mut u = if u0.max_div_residual() > 1e-10 {
        projected_initial = true;
        crate::projection::helmholtz_project(u0)
    } else {
        u0.clone()
    };
    u.dealias();

    let steps = cfg.steps();
    let n_modes = stepper.n_modes();
    let driver = BrownianDriver::new(cfg.seed, cfg.dt)?;
    let increments = if n_modes > 0 {
        driver.increments(path, steps, n_modes)
    } else {
        vec![Vec::new(); steps]
    };

    let e0 = u.l2_norm_sq();
    let energy_cap = cfg.blowup_factor * e0.max(1.0);

    let mut record = TrajectoryRecord {
        config_digest: digest,
        seed: cfg.seed,
        path,
        times: Vec::with_capacity(steps + 1),
        l2: Vec::with_capacity(steps + 1),
        h1: Vec::with_capacity(steps + 1),
        extra: vec![Vec::with_capacity(steps + 1); cfg.extra_norms.len()],
        snapshots: Vec::new(),
        sigma: cfg.t_end,
        blown_up: false,
        blowup_kind: None,
        projected_initial,
        final_state: u.clone(),
    };

    let push_norms = |rec: &mut TrajectoryRecord, t: f64, state: &SpectralField| {
        rec.times.push(t);
        rec.l2.push(state.l2_norm());
        rec.h1.push(bessel_norm(state, 1.0, 2.0).expect("q=2"));
        for (slot, (s, q)) in cfg.extra_norms.iter().enumerate() {
            rec.extra[slot].push(bessel_norm(state, *s, *q).expect("validated norms"));
        }
    };
    push_norms(&mut record, 0.0, &u);
    if cfg.snapshot_every > 0 {
        record.snapshots.push((0.0, u.clone()));
    }

    for step in 0..steps {
        let t = step as f64 * cfg.dt;
        let (next, drift, diffusions) = stepper.step(&u, &increments[step]);
        if let Some(obs) = observer.as_deref_mut() {
            // reconstruct the full drift cheaply from the explicit one
            let mut full = drift.clone();
            if stepper.nu_bar() > 0.0 {
                for c in 0..grid.dim() {
                    let src = u.component(c).to_vec();
                    let dst = full.component_mut(c);
                    for idx in 0..grid.len() {
                        dst[idx] -= stepper.nu_bar() * grid.k_sq(idx) * src[idx];
                    }
                }
            }
            obs.observe(&StepContext {
                step,
                time: t,
                dt: cfg.dt,
                state: &u,
                next: &next,
                drift_full: &full,
                diffusions: &diffusions,
                increments: &increments[step],
            });
        }

        let t_next = (step + 1) as f64 * cfg.dt;
        let finite = next.is_finite();
        let energy = if finite { next.l2_norm_sq() } else { f64::INFINITY };
        if !finite || energy > energy_cap {
            record.sigma = t_next;
            record.blown_up = true;
            record.blowup_kind =
                Some(if finite { BlowupKind::EnergyCap } else { BlowupKind::NonFinite });
            record.final_state = next;
            return Ok(record);
        }
        u = next;
        push_norms(&mut record, t_next, &u);
        if cfg.snapshot_every > 0 && (step + 1) % cfg.snapshot_every == 0 {
            record.snapshots.push((t_next, u.clone()));
        }
    }
    record.final_state = u;
    Ok(record)
}

/// Solve the turbulent Stokes system (zero initial data, exogenous
/// forcing) on one path.
pub fn solve_linear_stokes(cfg: &SolverConfig, path: usize) -> Result<TrajectoryRecord> {
    let mut cfg = cfg.clone();
    cfg.system = SystemKind::LinearStokes;
    cfg.project_forcing();
    let u0 = SpectralField::zeros(cfg.grid);
    run_trajectory(&u0, &cfg, path)
}

/// Run an ensemble of paths in parallel; results are ordered by path
/// index, so reductions are independent of scheduling.
pub fn run_ensemble<F>(make_u0: F, cfg: &SolverConfig, paths: usize) -> Result<Vec<TrajectoryRecord>>
where
    F: Fn(usize) -> SpectralField + Sync,
{
    cfg.validate()?;
    (0..paths)
        .into_par_iter()
        .map(|p| run_trajectory(&make_u0(p), cfg, p))
        .collect()
}
