//! Property tests for the exact spectral identities and the exponent
//! arithmetic.

use proptest::prelude::*;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use turbostokes::field::{random_dealiased_field, SpectralField};
use turbostokes::grid::TorusGrid;
use turbostokes::projection::{gradient, helmholtz_project, q_solve};
use turbostokes::spaces::exponents::{kappa_critical, validate_parameters, ParameterTuple};
use turbostokes::spaces::scaling::scaling_transform;

fn arb_grid() -> impl Strategy<Value = TorusGrid> {
    (2usize..=3, prop_oneof![Just(8usize), Just(12), Just(16)])
        .prop_map(|(dim, n)| TorusGrid::new(dim, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// ℙ is an idempotent orthogonal projection with exact kernel and
    /// range decomposition f = ℙf + ∇ℚf, and ℚ output is mean-zero.
    #[test]
    fn helmholtz_decomposition_properties(grid in arb_grid(), seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_dealiased_field(grid, &mut rng);
        let fnorm = f.l2_norm();
        prop_assume!(fnorm > 1e-6);

        let pf = helmholtz_project(&f);
        prop_assert!(pf.max_div_residual() <= 1e-12);

        let mut idem = helmholtz_project(&pf);
        idem.axpy(-1.0, &pf);
        prop_assert!(idem.l2_norm() <= 1e-12 * fnorm);

        let mut resid = f.clone();
        resid.axpy(-1.0, &pf);
        prop_assert!(pf.inner(&resid).abs() <= 1e-12 * fnorm * fnorm);

        let psi = q_solve(&f);
        prop_assert!(psi.mean().abs() <= 1e-13);
        let mut recon = gradient(&psi);
        recon.axpy(1.0, &pf);
        recon.axpy(-1.0, &f);
        prop_assert!(recon.l2_norm() <= 1e-12 * fnorm);
    }

    /// Parseval: grid energy equals coefficient energy.
    #[test]
    fn parseval_identity(grid in arb_grid(), seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_dealiased_field(grid, &mut rng);
        let phys = f.to_grid_values();
        let grid_energy: f64 =
            grid.cell_volume() * phys.iter().flatten().map(|v| v * v).sum::<f64>();
        let coeff_energy = f.l2_norm_sq();
        prop_assert!((grid_energy - coeff_energy).abs() <= 1e-12 * coeff_energy.max(1e-30));
    }

    /// The scaling map preserves divergence-freeness and composes:
    /// (u_λ)_μ = u_{λμ} on mode sets without truncation.
    #[test]
    fn scaling_composes(seed in 0u64..1_000_000) {
        let grid = TorusGrid::new(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = helmholtz_project(&random_dealiased_field(grid, &mut rng));
        let v = scaling_transform(&u, 4.0).unwrap();
        prop_assert!(v.max_div_residual() <= 1e-12);
        let w1 = scaling_transform(&v, 4.0).unwrap();
        let w2 = scaling_transform(&u, 16.0).unwrap();
        for c in 0..2 {
            for (a, b) in w1.component(c).iter().zip(w2.component(c)) {
                prop_assert!((a - b).norm() <= 1e-14);
            }
        }
    }

    /// Criticality flag of `validate_parameters` agrees with `kappa_critical`.
    #[test]
    fn criticality_flags_agree(
        d in 2u32..=3,
        p in 2.1f64..12.0,
        q in 2.0f64..8.0,
        delta in -0.9f64..0.0,
    ) {
        let kc = kappa_critical(d, p, q, delta);
        if kc.admissible {
            let t = ParameterTuple { d, p, q, delta, kappa: kc.kappa_c };
            let a = validate_parameters(&t);
            prop_assert!(a.critical, "tuple at κ_c must be flagged critical: {t:?}");
            prop_assert!((a.kappa_c - kc.kappa_c).abs() < 1e-12);
            // trace smoothness at the critical weight is the Besov exponent d/q - 1
            prop_assert!((a.trace_smoothness - (d as f64 / q - 1.0)).abs() < 1e-10);
        }
    }

    /// Dealiased pseudospectral products of band-limited fields are exact:
    /// the projected convective inner product cancels.
    #[test]
    fn convective_cancellation(seed in 0u64..1_000_000) {
        let grid = TorusGrid::new(2, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = helmholtz_project(&random_dealiased_field(grid, &mut rng));
        prop_assume!(u.l2_norm() > 1e-6);
        let conv = turbostokes::ops::convective_div(&u);
        let quotient = u.inner(&conv).abs() / (u.l2_norm() * u.grad_norm_sq());
        prop_assert!(quotient <= 1e-10, "cancellation quotient {quotient}");
    }
}

/// Hermitian symmetry survives projection, derivatives and dealiasing.
#[test]
fn hermitian_symmetry_is_preserved_by_operators() {
    let grid = TorusGrid::new(2, 16).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = random_dealiased_field(grid, &mut rng);
    let mut g = helmholtz_project(&f).derivative(0).unwrap();
    g.dealias();
    assert!(g.max_hermitian_residual() < 1e-12);
    let mut h = SpectralField::zeros(grid);
    h.add_mode(0, &[3, -2], Complex64::new(0.3, -0.7)).unwrap();
    assert!(h.max_hermitian_residual() < 1e-15);
}
