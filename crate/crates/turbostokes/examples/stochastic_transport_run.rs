//! Full 2-D stochastic run: Kraichnan transport noise plus linear-growth
//! multiplicative forcing, norm series and a survival summary over a
//! small ensemble. Also writes one field snapshot.
//!
//! ```bash
//! cargo run --release --example stochastic_transport_run
//! ```

use turbostokes::grid::TorusGrid;
use turbostokes::noise::{synthesize_kraichnan, NonlinearityPreset};
use turbostokes::snapshot::write_snapshot;
use turbostokes::solver::{run_ensemble, taylor_green, SolverConfig};

fn main() {
    let grid = TorusGrid::new(2, 64).unwrap();
    let mut cfg = SolverConfig::basic(grid, 2e-3, 1.0, 0.35, 7);
    cfg.noise = synthesize_kraichnan(2, 8, 1.0, 0.25, 11).unwrap();
    cfg.nonlinearity = NonlinearityPreset::linear_g(vec![0.1; 8]);
    cfg.snapshot_every = 250;
    println!("coercivity margin ν̂ = {:.4}", cfg.coercivity().unwrap());

    let u0 = taylor_green(grid, 1.0);
    let records = run_ensemble(|_| u0.clone(), &cfg, 8).unwrap();

    println!("\npath 0 series (every 100 steps):");
    println!("{:>6} {:>12} {:>12}", "t", "‖u‖_L²", "‖u‖_H¹");
    let rec = &records[0];
    for (i, &t) in rec.times.iter().enumerate() {
        if i % 100 == 0 {
            println!("{t:>6.2} {:>12.6} {:>12.6}", rec.l2[i], rec.h1[i]);
        }
    }

    let survived = records.iter().filter(|r| r.survived()).count();
    println!("\nsurvival: {survived}/{} paths reached T = {}", records.len(), cfg.t_end);

    let out = std::env::temp_dir().join("turbostokes_final_state.tsns");
    write_snapshot(&out, &records[0].final_state).unwrap();
    println!("final state snapshot written to {}", out.display());
}
