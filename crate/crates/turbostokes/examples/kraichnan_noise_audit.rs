//! Synthesize a Kraichnan transport-noise family and audit it: manifest,
//! Itô correction tensor, and the parabolicity margin as the noise
//! amplitude approaches the coercivity boundary.
//!
//! ```bash
//! cargo run --release --example kraichnan_noise_audit
//! ```

use turbostokes::grid::TorusGrid;
use turbostokes::noise::{coercivity_nu, synthesize_kraichnan, NoiseManifest};
use turbostokes::viscosity::ViscosityTensor;

fn main() {
    let grid = TorusGrid::new(2, 64).unwrap();
    let family = synthesize_kraichnan(2, 8, 1.0, 0.3, 42).unwrap();
    let a = ViscosityTensor::constant_isotropic(2, 0.5);

    let manifest = NoiseManifest::new(&family, &a, grid, 1.0);
    println!("family: {} scalar Brownian directions", manifest.count);
    for (n, mode) in manifest.modes.iter().enumerate() {
        println!(
            "  b_{n}: k = {:?}, |amplitude| = {:.4}, phase {:?}",
            &mode.wavevector[..2],
            mode.amplitude,
            mode.phase
        );
    }
    println!("measured sup_x ‖(b_n(x))‖_ℓ²  = {:.6}", manifest.measured_sup_l2);
    println!("‖b‖²_{{H^{{1,2}}(ℓ²)}}          = {:.6}", manifest.h_norm_sq_eta);
    println!("max per-mode divergence      = {:.2e}", manifest.max_divergence_residual);
    println!("coercivity margin ν̂          = {:.6}", manifest.coercivity_nu);

    let a_b = family.ito_correction(grid).unwrap();
    println!("\nIto correction a_b at x = 0: {:?}", a_b.at(0).entries[0][..2].to_vec());
    println!("a_b minimum eigenvalue over grid: {:.3e} (PSD)", a_b.min_eigenvalue());

    println!("\nscaling the family toward the parabolicity boundary:");
    println!("{:>10} {:>12}", "amplitude", "ν̂");
    for amp in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0] {
        let fam = synthesize_kraichnan(2, 8, 1.0, amp, 42).unwrap();
        println!("{amp:>10.2} {:>12.6}", coercivity_nu(&a, &fam, grid));
    }
}
