//! Bessel and Besov norm estimators plus weighted-in-time norms: the
//! Littlewood–Paley blocks of single modes, frame comparison against the
//! Parseval norm, and the singular-weight quadrature.
//!
//! ```bash
//! cargo run --release --example function_space_norms
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use turbostokes::field::random_dealiased_field;
use turbostokes::grid::TorusGrid;
use turbostokes::spaces::norms::{besov_norm, bessel_norm, lp_block_norms, single_mode_field};
use turbostokes::spaces::weights::{weighted_time_norm, WeightedTimeGrid};

fn main() {
    let grid = TorusGrid::new(2, 64).unwrap();

    println!("single mode cos(4x₁): Littlewood-Paley mass sits in block j = 2");
    let f = single_mode_field(grid, 1, &[4, 0], 1.0);
    for (j, mass) in lp_block_norms(&f, 2.0).unwrap() {
        println!("  block {j:>2}: L² mass {mass:.4}");
    }
    println!(
        "  B^{{1/2}}_{{2,2}} = {:.4} = 2^{{js}}·L² = {:.4}",
        besov_norm(&f, 0.5, 2.0, 2.0).unwrap(),
        2.0 * f.l2_norm()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = random_dealiased_field(grid, &mut rng);
    println!("\nrandom dealiased field:");
    for s in [0.0, 0.5, 1.0] {
        println!(
            "  s = {s}: H^{{s,2}} = {:.4}, B^s_{{2,2}} = {:.4} (frame-equivalent)",
            bessel_norm(&g, s, 2.0).unwrap(),
            besov_norm(&g, s, 2.0, 2.0).unwrap()
        );
    }
    println!("  H^{{0,3}} (L³ quadrature) = {:.4}", bessel_norm(&g, 0.0, 3.0).unwrap());

    println!("\nweighted time norms ‖·‖_{{L²(0,1, t^κ dt)}}:");
    for kappa in [0.0, 1.0, 2.0] {
        let tg = WeightedTimeGrid::standard(0.0, 1.0, kappa).unwrap();
        let series = vec![1.0; tg.len()];
        let exact = (1.0f64 / (kappa + 1.0)).sqrt();
        println!(
            "  κ = {kappa}: quadrature {:.6}, exact {:.6}",
            weighted_time_norm(&series, &tg, 2.0).unwrap(),
            exact
        );
    }
    // singular integrand t^{-1/4} against the closed form (∫ t^{1/2})^{1/2}
    let tg = WeightedTimeGrid::standard(0.0, 1.0, 1.0).unwrap();
    let series: Vec<f64> = tg.times.iter().map(|t| t.powf(-0.25)).collect();
    println!(
        "  singular series t^{{-1/4}}, κ = 1: {:.6} vs (2/3)^{{1/2}} = {:.6}",
        weighted_time_norm(&series, &tg, 2.0).unwrap(),
        (2.0f64 / 3.0).sqrt()
    );
}
