//! Energy-identity ledger and the a-priori energy bound check.
//!
//! Per step the ledger reconstructs every term of the discrete Itô
//! identity for `‖u‖²_{L²}`: viscous dissipation, the (cancelling)
//! convective contribution, deterministic forcing terms, the realized
//! martingale increment and quadratic variation, plus the expected
//! quadratic variation and the transport–g cross term for reference.
//! The residual collects what the identity terms do not account for;
//! on deterministic runs it is `O(dt²)` per step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::noise::{GSpec, NonlinearityPreset, NoiseFamily};
use crate::ops::{convective_div, div_a_grad};
use crate::projection::helmholtz_project;
use crate::solver::{
    run_trajectory_observed, SolverConfig, StepContext, StepObserver, SystemKind, TrajectoryRecord,
};
use crate::viscosity::ViscosityTensor;

/// One row of the ledger.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnergyStepEntry {
    pub time: f64,
    pub l2_sq: f64,
    pub grad_sq: f64,
    /// `−2dt⟨u, div(a_eff·∇u)⟩ ≥ 0` for coercive tensors.
    pub dissipation: f64,
    /// `−2dt⟨u, div(u⊗u)⟩`, the cancellation term.
    pub convective: f64,
    /// `2dt⟨u, ℙ(f₀ + div f + f̃) + f⟩`.
    pub f_terms: f64,
    /// Compensator `dt·Σ_n ‖G_n(u)‖²`.
    pub qv_expected: f64,
    /// `2dt·Σ_n ⟨(b_n·∇)u, ℙ g_n⟩`.
    pub cross_term: f64,
    /// `2 Σ_n ⟨u, ℙ(b_n·∇)u⟩ ΔW_n`.
    pub mart_transport: f64,
    /// `2 Σ_n ⟨u, ℙ g_n⟩ ΔW_n`.
    pub mart_g: f64,
    /// `‖Σ_n G_n ΔW_n‖²`, the realized quadratic variation.
    pub qv_realized: f64,
    pub delta_l2_sq: f64,
    pub residual: f64,
}

/// Ledger over a whole trajectory.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnergyLedger {
    pub entries: Vec<EnergyStepEntry>,
    pub max_abs_residual: f64,
    /// Worst convective cancellation quotient
    /// `|⟨u, ℙdiv(u⊗u)⟩| / (‖u‖·‖∇u‖²)`.
    pub max_cancellation_quotient: f64,
    /// Smallest pathwise constant `C` with
    /// `y(t) ≤ C(1+‖u₀‖²) + C∫₀^t y`, `y = sup‖u‖² + ∫‖∇u‖²`.
    pub gronwall_c: f64,
    pub complete: bool,
    pub warning: Option<String>,
}

struct LedgerObserver<'a> {
    cfg: &'a SolverConfig,
    a_eff: ViscosityTensor,
    entries: Vec<EnergyStepEntry>,
    max_cancel: f64,
}

impl StepObserver for LedgerObserver<'_> {
    fn observe(&mut self, ctx: &StepContext<'_>) {
        let u = ctx.state;
        let dt = ctx.dt;
        let l2_sq = u.l2_norm_sq();
        let grad_sq = u.grad_norm_sq();

        let visc = div_a_grad(u, &self.a_eff);
        let dissipation = -2.0 * dt * u.inner(&visc);

        let (convective, cancel_q) = if self.cfg.system == SystemKind::NavierStokes {
            let conv = convective_div(u);
            let ip = u.inner(&conv);
            let denom = u.l2_norm() * grad_sq;
            let q = if denom > 0.0 { ip.abs() / denom } else { 0.0 };
            (-2.0 * dt * ip, q)
        } else {
            (0.0, 0.0)
        };
        self.max_cancel = self.max_cancel.max(cancel_q);

        let drift_ip = 2.0 * dt * u.inner(ctx.drift_full);
        // f-terms are whatever the drift contributes beyond viscosity and
        // convection.
        let f_terms = drift_ip + dissipation - convective;

        let mut qv_expected = 0.0;
        let mut cross_term = 0.0;
        let mut mart_transport = 0.0;
        let mut mart_g = 0.0;
        let mut mart_field = SpectralField::zeros(u.grid());
        for (n, g_n) in ctx.diffusions.iter().enumerate() {
            let dw = ctx.increments[n];
            qv_expected += dt * g_n.l2_norm_sq();
            let transport = if n < self.cfg.noise.count() {
                Some(self.cfg.noise.transport(n, u))
            } else {
                None
            };
            match &transport {
                Some(tr) => {
                    let ptr = helmholtz_project(tr);
                    let mut gpart = g_n.clone();
                    gpart.axpy(-1.0, &ptr);
                    cross_term += 2.0 * dt * tr.inner(&gpart);
                    mart_transport += 2.0 * dw * u.inner(&ptr);
                    mart_g += 2.0 * dw * u.inner(&gpart);
                }
                None => {
                    mart_g += 2.0 * dw * u.inner(g_n);
                }
            }
            mart_field.axpy(dw, g_n);
        }
        let qv_realized = mart_field.l2_norm_sq();

        let delta_l2_sq = ctx.next.l2_norm_sq() - l2_sq;
        let residual =
            delta_l2_sq - (drift_ip + mart_transport + mart_g + qv_realized);

        self.entries.push(EnergyStepEntry {
            time: ctx.time,
            l2_sq,
            grad_sq,
            dissipation,
            convective,
            f_terms,
            qv_expected,
            cross_term,
            mart_transport,
            mart_g,
            qv_realized,
            delta_l2_sq,
            residual,
        });
    }
}

/// Rebuild the energy ledger of a recorded trajectory by deterministic
/// replay from its initial state.
pub fn energy_audit(traj: &TrajectoryRecord, cfg: &SolverConfig) -> Result<EnergyLedger> {
    let mut warning = None;
    if traj.config_digest != cfg.digest() {
        warning = Some(
            "trajectory digest does not match the supplied config; audit replays the config as given"
                .to_string(),
        );
    }
    let initial = match traj.snapshots.first() {
        Some((t, snap)) if *t == 0.0 => snap.clone(),
        _ => {
            return Ok(EnergyLedger {
                entries: Vec::new(),
                max_abs_residual: f64::NAN,
                max_cancellation_quotient: f64::NAN,
                gronwall_c: f64::NAN,
                complete: false,
                warning: Some("missing initial snapshot; partial audit only".to_string()),
            })
        }
    };
    let a_eff = cfg.effective_viscosity()?;
    let mut observer =
        LedgerObserver { cfg, a_eff, entries: Vec::new(), max_cancel: 0.0 };
    let replay = run_trajectory_observed(&initial, cfg, traj.path, &mut observer)?;
    if replay.l2.len() != traj.l2.len() {
        warning = Some("replay length differs from recorded series".to_string());
    }

    let entries = observer.entries;
    let max_abs_residual = entries.iter().map(|e| e.residual.abs()).fold(0.0, f64::max);
    let gronwall_c = pathwise_gronwall_constant(&replay, cfg.dt);
    Ok(EnergyLedger {
        entries,
        max_abs_residual,
        max_cancellation_quotient: observer.max_cancel,
        gronwall_c,
        complete: true,
        warning,
    })
}

/// Smallest `C` with `y(t) ≤ C[(1+‖u₀‖²) + ∫₀^t y ds]` along the path.
fn pathwise_gronwall_constant(rec: &TrajectoryRecord, dt: f64) -> f64 {
    let u0_sq = rec.l2.first().map(|v| v * v).unwrap_or(0.0);
    let mut sup = 0.0f64;
    let mut grad_int = 0.0f64;
    let mut y_int = 0.0f64;
    let mut worst: f64 = 0.0;
    for i in 0..rec.l2.len() {
        let l2_sq = rec.l2[i] * rec.l2[i];
        let grad_sq = (rec.h1[i] * rec.h1[i] - l2_sq).max(0.0);
        sup = sup.max(l2_sq);
        if i > 0 {
            grad_int += grad_sq * dt;
        }
        let y = sup + grad_int;
        worst = worst.max(y / (1.0 + u0_sq + y_int));
        y_int += y * dt;
    }
    worst
}

/// Frozen calibration margin for the empirical `C_T`.
pub const C_T_MARGIN: f64 = 2.0;

/// Outcome of the a-priori bound check
/// `E[sup‖u‖²] + E∫‖∇u‖² ≤ C_T (1 + E‖u₀‖²)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnergyEstimateReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
    pub c_t: f64,
    pub mean_u0_sq: f64,
    pub pass: bool,
    /// Ensemble-level Gronwall constant for `E[y(t)]`.
    pub gronwall_c: f64,
}

/// Evaluate the energy estimate over an ensemble. `c_t = None` calibrates
/// `C_T = C_T_MARGIN · lhs / (1 + E‖u₀‖²)` on this ensemble (the
/// reference configuration); pass a frozen value to test transfer.
pub fn energy_estimate_check(
    cfg: &SolverConfig,
    records: &[TrajectoryRecord],
    c_t: Option<f64>,
) -> Result<EnergyEstimateReport> {
    if records.is_empty() {
        return Err(Error::config("energy estimate needs at least one trajectory"));
    }
    let mut report = EnergyEstimateReport {
        applicable: true,
        reason: None,
        lhs: 0.0,
        rhs: 0.0,
        c_t: c_t.unwrap_or(0.0),
        mean_u0_sq: 0.0,
        pass: false,
        gronwall_c: 0.0,
    };
    if cfg.grid.dim() != 2 {
        report.applicable = false;
        report.reason = Some("the a-priori estimate is a 2-D statement".to_string());
        return Ok(report);
    }
    if cfg.nonlinearity.growth_certificate().linear.is_none() {
        report.applicable = false;
        report.reason =
            Some("linear growth hypothesis violated by the configured preset".to_string());
        return Ok(report);
    }

    let n = records.len() as f64;
    let mut mean_sup = 0.0;
    let mut mean_grad_int = 0.0;
    let mut mean_u0 = 0.0;
    for rec in records {
        let mut sup = 0.0f64;
        let mut grad_int = 0.0;
        for i in 0..rec.l2.len() {
            let l2_sq = rec.l2[i] * rec.l2[i];
            sup = sup.max(l2_sq);
            if i > 0 {
                grad_int += (rec.h1[i] * rec.h1[i] - l2_sq).max(0.0) * cfg.dt;
            }
        }
        mean_sup += sup / n;
        mean_grad_int += grad_int / n;
        mean_u0 += rec.l2.first().map(|v| v * v).unwrap_or(0.0) / n;
    }
    report.lhs = mean_sup + mean_grad_int;
    report.mean_u0_sq = mean_u0;
    let c_t = c_t.unwrap_or_else(|| C_T_MARGIN * report.lhs / (1.0 + mean_u0));
    report.c_t = c_t;
    report.rhs = c_t * (1.0 + mean_u0);
    report.pass = report.lhs <= report.rhs;
    report.gronwall_c = ensemble_gronwall_constant(records, cfg.dt);
    Ok(report)
}

fn ensemble_gronwall_constant(records: &[TrajectoryRecord], dt: f64) -> f64 {
    let steps = records.iter().map(|r| r.l2.len()).min().unwrap_or(0);
    let n = records.len() as f64;
    let u0_sq: f64 = records.iter().map(|r| r.l2[0] * r.l2[0]).sum::<f64>() / n;
    let mut sup = vec![0.0f64; records.len()];
    let mut grad_int = vec![0.0f64; records.len()];
    let mut ey_int = 0.0;
    let mut worst: f64 = 0.0;
    for i in 0..steps {
        let mut ey = 0.0;
        for (p, rec) in records.iter().enumerate() {
            let l2_sq = rec.l2[i] * rec.l2[i];
            sup[p] = sup[p].max(l2_sq);
            if i > 0 {
                grad_int[p] += (rec.h1[i] * rec.h1[i] - l2_sq).max(0.0) * dt;
            }
            ey += (sup[p] + grad_int[p]) / n;
        }
        worst = worst.max(ey / (1.0 + u0_sq + ey_int));
        ey_int += ey * dt;
    }
    worst
}

/// Deterministic-companion residual constant: strip the noise and state
/// nonlinearities from `cfg`, rerun from `u0`, and report
/// `C = max_step |residual| / dt²`.
pub fn deterministic_residual_constant(u0: &SpectralField, cfg: &SolverConfig) -> Result<f64> {
    let mut det = cfg.clone();
    det.noise = NoiseFamily::empty(cfg.grid.dim());
    det.nonlinearity = NonlinearityPreset { g: GSpec::Zero, ..cfg.nonlinearity.clone() };
    det.forcing.g.clear();
    det.snapshot_every = det.steps().max(1);
    let rec = crate::solver::run_trajectory(u0, &det, 0)?;
    let ledger = energy_audit(&rec, &det)?;
    Ok(ledger.max_abs_residual / (det.dt * det.dt))
}
