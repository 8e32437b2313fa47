//! Acceptance suite: one test per shipped guarantee, each printing a
//! single PASS/FAIL line (run with `--nocapture` to see them).

use std::sync::OnceLock;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use turbostokes::diagnostics::{
    deterministic_residual_constant, energy_estimate_check, serrin_consistency,
    small_data_survival, smr_estimate, smr_homogeneity_check, smr_single_mode_closed_form,
    SmrParams,
};
use turbostokes::field::{random_dealiased_field, SpectralField};
use turbostokes::grid::TorusGrid;
use turbostokes::noise::{synthesize_kraichnan, NoiseFamily, NonlinearityPreset};
use turbostokes::ops::convective_div;
use turbostokes::projection::{gradient, helmholtz_project, q_solve};
use turbostokes::solver::{
    run_ensemble, taylor_green, NoiseInterpretation, Scheme, SolverConfig, SystemKind,
    TrajectoryRecord,
};
use turbostokes::spaces::exponents::{kappa_critical, serrin_exponents, validate_parameters, ParameterTuple};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!("[{}] {criterion}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{criterion}: {detail}");
}

/// Taylor–Green plus a secondary mode; activates the nonlinear cascade
/// while staying smooth at desk scale.
fn reference_data(grid: TorusGrid, amp: f64) -> SpectralField {
    let mut u = taylor_green(grid, amp);
    let mut extra = SpectralField::zeros(grid);
    // polarization ⟂ (2,1)
    let k = [2i64, 1];
    let pol = [-1.0, 2.0];
    let norm = (5.0f64).sqrt();
    for (c, p) in pol.iter().enumerate() {
        extra
            .add_mode(c, &k, Complex64::new(0.25 * amp * p / norm, 0.1 * amp * p / norm))
            .unwrap();
    }
    u.axpy(1.0, &helmholtz_project(&extra));
    u.dealias();
    u
}

// ────────────────────────────────────────────────────────────────────
// Criterion 1: Helmholtz suite
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_1_helmholtz_suite() {
    let start = Instant::now();
    let tol = 1e-12;
    let mut worst_idem: f64 = 0.0;
    let mut worst_orth: f64 = 0.0;
    let mut worst_div: f64 = 0.0;
    let mut worst_decomp: f64 = 0.0;
    let mut worst_qsolve: f64 = 0.0;
    for (dim, n) in [(2usize, 64usize), (3, 32)] {
        let grid = TorusGrid::new(dim, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + dim as u64);
        for _ in 0..100 {
            let f = random_dealiased_field(grid, &mut rng);
            let fnorm = f.l2_norm();
            let pf = helmholtz_project(&f);

            let ppf = helmholtz_project(&pf);
            let mut idem = ppf.clone();
            idem.axpy(-1.0, &pf);
            worst_idem = worst_idem.max(idem.l2_norm() / fnorm);

            let mut resid = f.clone();
            resid.axpy(-1.0, &pf);
            worst_orth =
                worst_orth.max(pf.inner(&resid).abs() / (fnorm * fnorm));

            worst_div = worst_div.max(pf.max_div_residual());

            let psi = q_solve(&f);
            let grad = gradient(&psi);
            let mut recon = pf.clone();
            recon.axpy(1.0, &grad);
            recon.axpy(-1.0, &f);
            worst_decomp = worst_decomp.max(recon.l2_norm() / fnorm);

            let mut cross = f.clone();
            cross.axpy(-1.0, &grad);
            cross.axpy(-1.0, &pf);
            worst_qsolve = worst_qsolve.max(cross.l2_norm() / fnorm);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst_idem <= tol
        && worst_orth <= tol
        && worst_div <= tol
        && worst_decomp <= tol
        && worst_qsolve <= tol
        && elapsed < 10.0;
    report(
        "criterion 1 (Helmholtz suite)",
        pass,
        &format!(
            "idem {worst_idem:.2e}, orth {worst_orth:.2e}, div {worst_div:.2e}, \
             decomp {worst_decomp:.2e}, q_solve {worst_qsolve:.2e}, {elapsed:.1}s"
        ),
    );
}

// ────────────────────────────────────────────────────────────────────
// Criterion 2: convective cancellation
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_2_cancellation_identity() {
    let start = Instant::now();
    let grid = TorusGrid::new(2, 64).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2020);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let u = helmholtz_project(&random_dealiased_field(grid, &mut rng));
        let conv = convective_div(&u);
        let pconv = helmholtz_project(&conv);
        let quotient = u.inner(&pconv).abs() / (u.l2_norm() * u.grad_norm_sq());
        worst = worst.max(quotient);
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst <= 1e-10 && elapsed < 10.0;
    report(
        "criterion 2 (cancellation identity)",
        pass,
        &format!("max quotient {worst:.2e}, {elapsed:.1}s"),
    );
}

// ────────────────────────────────────────────────────────────────────
// Criterion 3: Itô–Stratonovich consistency
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_3_ito_stratonovich_consistency() {
    let start = Instant::now();
    let grid = TorusGrid::new(2, 32).unwrap();
    let nu = 0.5;
    let beta = 0.6;
    let t_end = 0.5;
    let paths = 64;

    let strat_cfg = |dt: f64| {
        let mut cfg = SolverConfig::basic(grid, dt, t_end, nu, 333);
        cfg.system = SystemKind::LinearStokes;
        cfg.interpretation = NoiseInterpretation::Stratonovich;
        cfg.noise =
            NoiseFamily::constant_fields(2, &[[beta, 0.0, 0.0], [0.0, beta, 0.0]]);
        cfg
    };
    let u0 = reference_data(grid, 1.0);

    // closed-form mean flow: decay by a + a_b = (ν + β²/2)·I per mode
    let mu_eff = nu + beta * beta / 2.0;
    let closed = |k_sq: f64, z0: Complex64| z0 * (-mu_eff * k_sq * t_end).exp();

    // (i) ensemble mean within 3 Monte Carlo standard errors per mode
    let dt = 1.0 / 64.0;
    let cfg = strat_cfg(dt);
    let records = run_ensemble(|_| u0.clone(), &cfg, paths).unwrap();
    let mut max_sigmas = 0.0f64;
    let mut checked = 0;
    for c in 0..2 {
        for idx in 0..grid.len() {
            let z0 = u0.component(c)[idx];
            if z0.norm() < 1e-8 {
                continue;
            }
            let vals: Vec<Complex64> =
                records.iter().map(|r| r.final_state.component(c)[idx]).collect();
            let mean = vals.iter().sum::<Complex64>() / paths as f64;
            let var: f64 = vals.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>()
                / (paths as f64 - 1.0);
            let se = (var / paths as f64).sqrt();
            let target = closed(grid.k_sq(idx), z0);
            let dev = (mean - target).norm();
            if se > 0.0 {
                max_sigmas = max_sigmas.max(dev / se);
            }
            checked += 1;
        }
    }
    let mean_ok = max_sigmas <= 3.0;

    // (ii) the scheme's exact mean flow (deterministic companion with the
    // corrected tensor) halves its discrepancy when dt halves
    let companion = |dt: f64| {
        let mut cfg = SolverConfig::basic(grid, dt, t_end, mu_eff, 333);
        cfg.system = SystemKind::LinearStokes;
        turbostokes::solver::run_trajectory(&u0, &cfg, 0).unwrap()
    };
    let discrepancy = |rec: &TrajectoryRecord| -> f64 {
        let mut worst: f64 = 0.0;
        for c in 0..2 {
            for idx in 0..grid.len() {
                let z0 = u0.component(c)[idx];
                if z0.norm() < 1e-8 {
                    continue;
                }
                let dev = (rec.final_state.component(c)[idx] - closed(grid.k_sq(idx), z0)).norm();
                worst = worst.max(dev);
            }
        }
        worst
    };
    let d_coarse = discrepancy(&companion(dt));
    let d_fine = discrepancy(&companion(dt / 2.0));
    let ratio = d_fine / d_coarse;
    let halving_ok = (0.35..=0.65).contains(&ratio);

    let elapsed = start.elapsed().as_secs_f64();
    let pass = mean_ok && halving_ok && elapsed < 120.0;
    report(
        "criterion 3 (Ito-Stratonovich consistency)",
        pass,
        &format!(
            "max |mean-closed|/SE = {max_sigmas:.2} over {checked} modes, \
             halving ratio {ratio:.3} ({d_coarse:.2e} -> {d_fine:.2e}), {elapsed:.1}s"
        ),
    );
}

// ────────────────────────────────────────────────────────────────────
// Criteria 4+5 share the 2-D linear-growth ensembles
// ────────────────────────────────────────────────────────────────────
struct LinearGrowthLab {
    cfg: SolverConfig,
    ensembles: Vec<(f64, Vec<TrajectoryRecord>)>,
}

fn linear_growth_lab() -> &'static LinearGrowthLab {
    static LAB: OnceLock<LinearGrowthLab> = OnceLock::new();
    LAB.get_or_init(|| {
        let grid = TorusGrid::new(2, 64).unwrap();
        let mut cfg = SolverConfig::basic(grid, 2.5e-3, 1.0, 0.35, 4040);
        cfg.noise = synthesize_kraichnan(2, 8, 1.0, 0.25, 11).unwrap();
        cfg.nonlinearity = NonlinearityPreset::linear_g(vec![0.1; 8]);
        cfg.validate().unwrap();
        let ensembles = [1.0, 2.0, 4.0]
            .into_iter()
            .map(|amp| {
                let u0 = reference_data(grid, amp);
                (amp, run_ensemble(|_| u0.clone(), &cfg, 64).unwrap())
            })
            .collect();
        LinearGrowthLab { cfg, ensembles }
    })
}

#[test]
fn criterion_4_energy_estimate() {
    let start = Instant::now();
    let lab = linear_growth_lab();
    let nu_hat = lab.cfg.coercivity().unwrap();
    assert!(nu_hat > 0.0, "lab configuration must be coercive, got {nu_hat}");

    // calibrate C_T on the reference amplitude, then hold it fixed
    let reference = energy_estimate_check(&lab.cfg, &lab.ensembles[0].1, None).unwrap();
    let mut transfer_ok = true;
    let mut detail = format!("C_T={:.3} (ref lhs {:.3e})", reference.c_t, reference.lhs);
    for (amp, records) in &lab.ensembles[1..] {
        let rep = energy_estimate_check(&lab.cfg, records, Some(reference.c_t)).unwrap();
        detail.push_str(&format!(", amp x{amp}: lhs/rhs = {:.3}", rep.lhs / rep.rhs));
        transfer_ok &= rep.applicable && rep.pass;
    }

    // discrete energy-identity residual on the deterministic companion
    let u0 = reference_data(lab.cfg.grid, 1.0);
    let c_coarse = deterministic_residual_constant(&u0, &lab.cfg).unwrap();
    let mut half_cfg = lab.cfg.clone();
    half_cfg.dt /= 2.0;
    let c_fine = deterministic_residual_constant(&u0, &half_cfg).unwrap();
    let c_ratio = c_fine / c_coarse;
    let residual_ok = c_coarse.is_finite() && (1.0 / 1.5..=1.5).contains(&c_ratio);
    detail.push_str(&format!(", residual C {:.3e} -> {:.3e} (ratio {:.2})", c_coarse, c_fine, c_ratio));

    let elapsed = start.elapsed().as_secs_f64();
    detail.push_str(&format!(", {elapsed:.1}s"));
    let pass = transfer_ok && residual_ok && elapsed < 300.0;
    report("criterion 4 (2-D energy estimate)", pass, &detail);
}

#[test]
fn criterion_5_serrin_consistency() {
    let start = Instant::now();
    let lab = linear_growth_lab();
    let pair = serrin_exponents(2, 2.0, 2.0, 0.0);
    assert!((pair.gamma0 - 1.0).abs() < 1e-14);

    let mut total_paths = 0;
    let mut total_violations = 0;
    let mut min_survival = 1.0f64;
    for (_, records) in &lab.ensembles {
        let report = serrin_consistency(records, &pair, 0.05, &lab.cfg).unwrap();
        total_paths += report.paths;
        total_violations += report.consistency_violations;
        min_survival = min_survival.min(report.survival_fraction);
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = total_violations == 0 && min_survival == 1.0 && elapsed < 300.0;
    report(
        "criterion 5 (Serrin consistency)",
        pass,
        &format!(
            "{total_paths} paths, {total_violations} violations, survival {min_survival}, {elapsed:.1}s"
        ),
    );
}

// ────────────────────────────────────────────────────────────────────
// Criterion 6: SMR stability
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_6_smr_stability() {
    let start = Instant::now();
    let params = SmrParams::l2_pair();
    let seed = 505;
    let kmax = 4;
    let base = |n: usize| {
        let grid = TorusGrid::new(2, n).unwrap();
        let mut cfg = SolverConfig::basic(grid, 4e-3, 1.0, 1.0, 606);
        cfg.noise = synthesize_kraichnan(2, 4, 1.0, 0.4, 5).unwrap();
        cfg
    };

    let homogeneity = smr_homogeneity_check(&base(32), &params, seed, kmax, 3.0, 1).unwrap();
    let rep64 = smr_estimate(&base(32), &params, 64, seed, kmax).unwrap();
    let rep128 = smr_estimate(&base(32), &params, 128, seed, kmax).unwrap();
    let repg = smr_estimate(&base(64), &params, 64, seed, kmax).unwrap();
    let ensemble_drift =
        (rep128.sup_space_time - rep64.sup_space_time).abs() / rep64.sup_space_time;
    let grid_drift = (repg.sup_space_time - rep64.sup_space_time).abs() / rep64.sup_space_time;

    let ((st, tr), (est, etr)) =
        smr_single_mode_closed_form(TorusGrid::new(2, 16).unwrap(), 1.0, 1e-4, 0.5, &[1, 0])
            .unwrap();
    let closed_ok = (st - est).abs() <= 0.02 * est && (tr - etr).abs() <= 0.02 * etr;

    let elapsed = start.elapsed().as_secs_f64();
    let pass = homogeneity < 1e-10
        && ensemble_drift < 0.2
        && grid_drift < 0.2
        && closed_ok
        && elapsed < 180.0;
    report(
        "criterion 6 (SMR stability)",
        pass,
        &format!(
            "homogeneity {homogeneity:.1e}, ensemble drift {ensemble_drift:.3}, \
             grid drift {grid_drift:.3}, closed-form ({st:.3} vs {est:.3}, {tr:.3} vs {etr:.3}), {elapsed:.1}s"
        ),
    );
}

// ────────────────────────────────────────────────────────────────────
// Criterion 7: scaling invariance
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_7_scaling_invariance() {
    let start = Instant::now();
    let grid = TorusGrid::new(2, 32).unwrap();
    let u0 = reference_data(grid, 1.0);

    let mut det_cfg = SolverConfig::basic(grid, 1e-3, 0.25, 0.5, 707);
    det_cfg.scheme = Scheme::ExponentialEuler;
    let det = turbostokes::diagnostics::scaling_check(&u0, &det_cfg, 4.0, 25).unwrap();

    let mut sto_cfg = det_cfg.clone();
    sto_cfg.noise = NoiseFamily::constant_fields(2, &[[0.5, 0.0, 0.0], [0.0, 0.5, 0.0]]);
    let sto = turbostokes::diagnostics::scaling_check(&u0, &sto_cfg, 4.0, 25).unwrap();

    let elapsed = start.elapsed().as_secs_f64();
    let pass = det.max_rel_error <= 1e-3 && sto.max_rel_error <= 5e-3 && elapsed < 120.0;
    report(
        "criterion 7 (scaling invariance)",
        pass,
        &format!(
            "deterministic {:.2e} (<= 1e-3), stochastic {:.2e} (<= 5e-3), {elapsed:.1}s",
            det.max_rel_error, sto.max_rel_error
        ),
    );
}

// ────────────────────────────────────────────────────────────────────
// Criterion 8: exponent calculators
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_8_exponent_calculators() {
    let start = Instant::now();

    // the 2-D energy tuple: κ_c = 0, admissible, critical, trace smoothness 0
    let t = ParameterTuple { d: 2, p: 2.0, q: 2.0, delta: 0.0, kappa: 0.0 };
    let a = validate_parameters(&t);
    let kc = kappa_critical(2, 2.0, 2.0, 0.0);
    let tuple1_ok = a.admissible
        && a.critical
        && a.trace_smoothness.abs() < 1e-14
        && kc.kappa_c.abs() < 1e-14
        && kc.admissible;

    // classic Serrin equality case
    let s = serrin_exponents(3, 4.0, 6.0, 0.0);
    let tuple2_ok = s.gamma0.abs() < 1e-14 && s.classic;

    // negative-smoothness frontier probe
    let f = serrin_exponents(2, 100.0, 100.0, -0.5);
    let tuple3_ok = (f.gamma0 - (-0.96)).abs() < 0.05 && !f.classic;

    // admissibility boundary κ = p/2 − 1 rejected
    let boundary = ParameterTuple { d: 3, p: 4.0, q: 3.0, delta: 0.0, kappa: 1.0 };
    let boundary_rejected = !validate_parameters(&boundary).admissible
        && !kappa_critical(3, 4.0, 3.0, 0.0).admissible;

    let elapsed = start.elapsed().as_secs_f64();
    let pass = tuple1_ok && tuple2_ok && tuple3_ok && boundary_rejected && elapsed < 1.0;
    report(
        "criterion 8 (exponent calculators)",
        pass,
        &format!(
            "energy tuple {tuple1_ok}, classic Serrin {tuple2_ok}, frontier γ₀={:.3} {tuple3_ok}, \
             boundary rejected {boundary_rejected}, {elapsed:.3}s",
            f.gamma0
        ),
    );
}

// ────────────────────────────────────────────────────────────────────
// Criterion 9: small-data monotonicity
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_9_small_data_monotonicity() {
    let start = Instant::now();
    let grid = TorusGrid::new(2, 32).unwrap();
    let mut cfg = SolverConfig::basic(grid, 2e-3, 1.0, 0.4, 909);
    cfg.noise = synthesize_kraichnan(2, 4, 1.0, 0.2, 7).unwrap();
    // data ladder pushes well past the cap: the certificate's validity
    // range ends at |u| = cap
    cfg.nonlinearity = NonlinearityPreset::quadratic_g(vec![1.2, 0.9, 0.7, 0.5], 3.0);
    cfg.validate().unwrap();

    let u0 = reference_data(grid, 1.0);
    let table = small_data_survival(&cfg, &u0, &[6.0, 3.0, 1.5], 64).unwrap();
    let fractions: Vec<f64> = table.rows.iter().map(|r| r.fraction).collect();

    let elapsed = start.elapsed().as_secs_f64();
    let pass = table.monotone_within_2se && elapsed < 300.0;
    report(
        "criterion 9 (small-data monotonicity)",
        pass,
        &format!(
            "survival {fractions:?} at amplitudes [6, 3, 1.5], M1={:.2}, M2={:.2}, {elapsed:.1}s",
            table.m1, table.m2
        ),
    );
}

// ────────────────────────────────────────────────────────────────────
// Criterion 10: determinism
// ────────────────────────────────────────────────────────────────────
#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let spec_text = r#"
        preset = "simulate"
        seed = 12
        paths = 4

        [grid]
        dim = 2
        n = 32

        [time]
        dt = 0.002
        t_end = 0.1

        [viscosity]
        nu = 0.4

        [noise]
        n_b = 4
        zeta = 1.0
        amplitude = 0.2
        seed = 3

        [nonlinearity]
        kind = "linear"
        gammas = [0.1, 0.1, 0.1, 0.1]

        [initial]
        kind = "taylor-green"
        amplitude = 1.0
    "#;
    let mut spec: turbostokes::experiment::ExperimentSpec = toml::from_str(spec_text).unwrap();
    let dir = tempfile::tempdir().unwrap();
    spec.out = Some(dir.path().join("a"));
    turbostokes::experiment::run_experiment(&spec).unwrap();
    spec.out = Some(dir.path().join("b"));
    turbostokes::experiment::run_experiment(&spec).unwrap();

    let mut identical = true;
    for p in 0..4 {
        let fa = std::fs::read(dir.path().join("a").join(format!("path_{p:03}.tsv"))).unwrap();
        let fb = std::fs::read(dir.path().join("b").join(format!("path_{p:03}.tsv"))).unwrap();
        identical &= fa == fb;
    }
    // harness reports rerun byte-identically too
    let ra = std::fs::read(dir.path().join("a").join("report.json")).unwrap();
    let rb = std::fs::read(dir.path().join("b").join("report.json")).unwrap();
    identical &= ra == rb;

    let elapsed = start.elapsed().as_secs_f64();
    let pass = identical;
    report(
        "criterion 10 (determinism)",
        pass,
        &format!("byte-identical reruns across parallel ensembles, {elapsed:.1}s"),
    );
}
