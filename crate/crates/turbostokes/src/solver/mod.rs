//! Time integration of the turbulent Stokes system and the full
//! projected nonlinear system, in Itô or Stratonovich mode.

mod config;
mod step;
mod trajectory;

pub use config::{Forcing, NoiseInterpretation, Scheme, SolverConfig, SystemKind};
pub use step::{diffusion, drift, step_ito, step_stratonovich, Stepper};
pub use trajectory::{
    run_ensemble, run_trajectory, run_trajectory_observed, solve_linear_stokes, StepContext,
    StepObserver, TrajectoryRecord,
};

/// Taylor–Green vortex initial data on `𝕋²`, the workhorse deterministic
/// test flow.
pub fn taylor_green(grid: crate::grid::TorusGrid, amp: f64) -> crate::field::SpectralField {
    let mut ux = vec![0.0; grid.len()];
    let mut uy = vec![0.0; grid.len()];
    for idx in 0..grid.len() {
        let x = grid.point(idx);
        ux[idx] = amp * x[0].cos() * x[1].sin();
        uy[idx] = -amp * x[0].sin() * x[1].cos();
    }
    crate::field::SpectralField::from_grid_values(grid, &[ux, uy].to_vec()).expect("layout")
}
