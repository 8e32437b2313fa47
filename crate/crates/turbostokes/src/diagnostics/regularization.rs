//! Regularization monitor: Sobolev norms along a trajectory across a
//! smoothness ladder.
//!
//! The monitor only makes resolution-dependent observations: it reports
//! `‖u(t)‖_{H^{s,q}}` per snapshot and, via [`refinement_stability`],
//! whether a norm at `t > 0` is stable under grid doubling — never a
//! continuum claim.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::SpectralField;
use crate::grid::TorusGrid;
use crate::solver::{run_trajectory, SolverConfig, TrajectoryRecord};
use crate::spaces::norms::bessel_norm;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegularizationTable {
    pub q: f64,
    pub s_ladder: Vec<f64>,
    pub times: Vec<f64>,
    /// `norms[i][j] = ‖u(times[i])‖_{H^{s_j,q}}`.
    pub norms: Vec<Vec<f64>>,
    pub warning: Option<String>,
}

/// Evaluate the ladder on every stored snapshot.
pub fn regularization_monitor(
    traj: &TrajectoryRecord,
    s_ladder: &[f64],
    q: f64,
) -> Result<RegularizationTable> {
    let mut table = RegularizationTable {
        q,
        s_ladder: s_ladder.to_vec(),
        times: Vec::new(),
        norms: Vec::new(),
        warning: None,
    };
    if traj.snapshots.is_empty() {
        table.warning = Some("trajectory carries no snapshots; configure snapshot_every".into());
        return Ok(table);
    }
    for (t, snap) in &traj.snapshots {
        let row: Result<Vec<f64>> = s_ladder.iter().map(|&s| bessel_norm(snap, s, q)).collect();
        table.times.push(*t);
        table.norms.push(row?);
    }
    Ok(table)
}

/// Run the same configuration at `n` and `2n` from a grid-consistent
/// initial-data constructor and return the `H^{s,q}` norms of both runs
/// at the first snapshot time `≥ t_probe`.
pub fn refinement_stability<F>(
    make_u0: F,
    cfg: &SolverConfig,
    t_probe: f64,
    s: f64,
    q: f64,
) -> Result<(f64, f64)>
where
    F: Fn(TorusGrid) -> SpectralField,
{
    let probe_steps = (t_probe / cfg.dt).round().max(1.0) as usize;
    let run = |grid: TorusGrid| -> Result<f64> {
        let mut c = cfg.clone();
        c.grid = grid;
        c.snapshot_every = probe_steps;
        let rec = run_trajectory(&make_u0(grid), &c, 0)?;
        let (_, snap) = rec
            .snapshots
            .iter()
            .find(|(t, _)| *t >= t_probe - 0.5 * cfg.dt)
            .ok_or_else(|| crate::error::Error::config("no snapshot at probe time"))?;
        bessel_norm(snap, s, q)
    };
    let coarse = run(cfg.grid)?;
    let fine = run(TorusGrid::new(cfg.grid.dim(), cfg.grid.n() * 2)?)?;
    Ok((coarse, fine))
}
