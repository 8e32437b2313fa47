//! Helmholtz–Leray projection on random fields: idempotence,
//! orthogonality, exact divergence-freeness and the decomposition
//! `f = ℙf + ∇ℚf`.
//!
//! ```bash
//! cargo run --release --example helmholtz_playground
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use turbostokes::field::random_dealiased_field;
use turbostokes::grid::TorusGrid;
use turbostokes::projection::{gradient, helmholtz_project, q_solve};

fn main() {
    for (dim, n) in [(2usize, 64usize), (3, 32)] {
        let grid = TorusGrid::new(dim, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = random_dealiased_field(grid, &mut rng);
        let pf = helmholtz_project(&f);
        let psi = q_solve(&f);
        let grad = gradient(&psi);

        let mut idem = helmholtz_project(&pf);
        idem.axpy(-1.0, &pf);
        let mut resid = f.clone();
        resid.axpy(-1.0, &pf);
        let mut recon = pf.clone();
        recon.axpy(1.0, &grad);
        recon.axpy(-1.0, &f);

        println!("grid {n}^{dim}: ‖f‖ = {:.4}", f.l2_norm());
        println!("  solenoidal part     {:.4}  (gradient part {:.4})", pf.l2_norm(), grad.l2_norm());
        println!("  ‖ℙℙf − ℙf‖/‖f‖      {:.2e}", idem.l2_norm() / f.l2_norm());
        println!("  ⟨ℙf, f − ℙf⟩/‖f‖²   {:.2e}", pf.inner(&resid) / f.l2_norm().powi(2));
        println!("  max mode div(ℙf)    {:.2e}", pf.max_div_residual());
        println!("  ‖f − ℙf − ∇ℚf‖/‖f‖  {:.2e}", recon.l2_norm() / f.l2_norm());
        println!();
    }
}
