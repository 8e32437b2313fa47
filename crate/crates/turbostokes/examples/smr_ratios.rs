//! Empirical stochastic maximal regularity: solve the turbulent Stokes
//! system for an ensemble of random forcings and report the ratios of
//! solution norms to the data functional `J_{p,q,κ}(f,g)`.
//!
//! ```bash
//! cargo run --release --example smr_ratios
//! ```

use turbostokes::diagnostics::{smr_estimate, smr_homogeneity_check, smr_single_mode_closed_form, SmrParams};
use turbostokes::grid::TorusGrid;
use turbostokes::noise::synthesize_kraichnan;
use turbostokes::solver::SolverConfig;

fn main() {
    let grid = TorusGrid::new(2, 32).unwrap();
    let mut cfg = SolverConfig::basic(grid, 4e-3, 1.0, 1.0, 1);
    cfg.noise = synthesize_kraichnan(2, 4, 1.0, 0.4, 5).unwrap();
    let params = SmrParams::l2_pair();

    let report = smr_estimate(&cfg, &params, 64, 21, 4).unwrap();
    println!("p = q = 2, κ = 0 pair over {} samples:", report.samples.len());
    println!("  sup   ‖u‖_{{L²(H¹)}}/J  = {:.4}", report.sup_space_time);
    println!("  p90                    = {:.4}", report.p90_space_time);
    println!("  median                 = {:.4}", report.median_space_time);
    println!("  sup   ‖u‖_{{C(L²)}}/J   = {:.4}", report.sup_trace);

    let doubled = smr_estimate(&cfg, &params, 128, 21, 4).unwrap();
    println!(
        "\nsup ratio drift when the ensemble doubles: {:.2}%",
        100.0 * (doubled.sup_space_time - report.sup_space_time).abs() / report.sup_space_time
    );

    let dev = smr_homogeneity_check(&cfg, &params, 21, 4, 3.0, 0).unwrap();
    println!("homogeneity deviation under (f,g) -> 3(f,g): {dev:.2e}");

    let ((st, tr), (est, etr)) =
        smr_single_mode_closed_form(TorusGrid::new(2, 16).unwrap(), 1.0, 1e-4, 0.5, &[1, 0])
            .unwrap();
    println!("\nsingle-mode closed form (b = 0): harness ({st:.4}, {tr:.4}) vs exact ({est:.4}, {etr:.4})");
}
