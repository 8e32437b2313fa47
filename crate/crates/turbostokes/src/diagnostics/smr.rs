//! Empirical stochastic maximal regularity for the turbulent Stokes
//! system.
//!
//! For an ensemble of random band-limited forcings `(f, g)` the harness
//! solves the linear system from zero data and reports per-sample ratios
//! of solution norms to the data functional
//! `J_{p,q,κ}(f,g) = ‖f‖_{L^p(w_κ;H^{−1+δ,q})} + ‖g‖_{L^p(w_κ;H^{δ,q}(ℓ²))}`,
//! together with their sup and quantiles. The boundedness of these
//! ratios — and their stability under ensemble and grid growth — is the
//! checkable content of the maximal-regularity estimates; absolute
//! constants are convention-dependent and not compared to anything.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::{TorusGrid, MAX_DIM};
use crate::solver::{solve_linear_stokes, SolverConfig, SystemKind, TrajectoryRecord};
use crate::spaces::norms::{besov_norm, bessel_norm};

/// Exponents of the estimate under test.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SmrParams {
    pub p: f64,
    pub q: f64,
    pub kappa: f64,
    pub delta: f64,
    /// Interior offset (fraction of `T`) for the `C([ε,T]; B^{1+δ−2/p})`
    /// proxy in the `p > 2` branch.
    pub epsilon_frac: f64,
}

impl SmrParams {
    pub fn l2_pair() -> Self {
        SmrParams { p: 2.0, q: 2.0, kappa: 0.0, delta: 0.0, epsilon_frac: 0.25 }
    }
}

/// Per-sample norms and ratios.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmrSample {
    pub sample: usize,
    pub j_norm: f64,
    /// Weighted `L^p(H^{1+δ,q})` ratio (C₁ for p>2, C₅ for p=2).
    pub ratio_space_time: f64,
    /// `C([0,T]; ·)` trace ratio (Besov proxy for p>2, `L²` for p=2; C₃/C₆).
    pub ratio_trace: f64,
    /// Interior `C([ε,T]; B^{1+δ−2/p}_{q,p})` proxy ratio (C₄, p>2 only).
    pub ratio_interior: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmrReport {
    pub params: SmrParams,
    pub grid_n: usize,
    pub samples: Vec<SmrSample>,
    pub sup_space_time: f64,
    pub sup_trace: f64,
    pub sup_interior: Option<f64>,
    pub median_space_time: f64,
    pub p90_space_time: f64,
}

/// Random divergence-free field with unit-variance Gaussian coefficients
/// on modes `0 < |k|_∞ ≤ kmax`. The spectrum depends only on the RNG
/// stream and `kmax`, never on the grid, so samples are comparable across
/// resolutions.
pub fn random_divfree_forcing<R: Rng>(grid: TorusGrid, kmax: i64, rng: &mut R) -> SpectralField {
    let dim = grid.dim();
    let mut f = SpectralField::zeros(grid);
    let mut k = [0i64; MAX_DIM];
    let ranges: Vec<Vec<i64>> = (0..dim).map(|_| (-kmax..=kmax).collect()).collect();
    let mut cursor = vec![0usize; dim];
    loop {
        for ax in 0..dim {
            k[ax] = ranges[ax][cursor[ax]];
        }
        // one representative per ±k pair: first nonzero component positive
        let first = (0..dim).map(|ax| k[ax]).find(|&v| v != 0).unwrap_or(0);
        if first > 0 {
            let mut amp = [Complex64::default(); MAX_DIM];
            for a in amp.iter_mut().take(dim) {
                *a = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            }
            // remove the longitudinal part so the pair is divergence-free
            let ksq: f64 = (0..dim).map(|ax| (k[ax] * k[ax]) as f64).sum();
            let mut kdota = Complex64::default();
            for ax in 0..dim {
                kdota += Complex64::new(k[ax] as f64, 0.0) * amp[ax];
            }
            for ax in 0..dim {
                amp[ax] -= Complex64::new(k[ax] as f64, 0.0) * kdota / ksq;
            }
            for ax in 0..dim {
                if amp[ax] != Complex64::default() {
                    f.add_mode(ax, &k[..dim], amp[ax]).expect("mode in range");
                }
            }
        }
        // advance odometer
        let mut ax = dim;
        loop {
            if ax == 0 {
                return f;
            }
            ax -= 1;
            cursor[ax] += 1;
            if cursor[ax] < ranges[ax].len() {
                break;
            }
            cursor[ax] = 0;
        }
    }
}

/// `‖g‖_{H^{s,q}(ℓ²)}` of a finite family.
pub fn bessel_family_norm(fields: &[SpectralField], s: f64, q: f64) -> Result<f64> {
    if fields.is_empty() {
        return Ok(0.0);
    }
    if (q - 2.0).abs() < 1e-14 {
        let sum: f64 = fields
            .iter()
            .map(|g| bessel_norm(g, s, 2.0).map(|v| v * v))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .sum();
        return Ok(sum.sqrt());
    }
    let grid = fields[0].grid();
    let mut point_sq = vec![0.0; grid.len()];
    for g in fields {
        let mut shifted = g.clone();
        for c in 0..grid.dim() {
            let comp = shifted.component_mut(c);
            for (idx, z) in comp.iter_mut().enumerate() {
                *z *= (1.0 + grid.k_sq(idx)).powf(s / 2.0);
            }
        }
        let phys = shifted.to_grid_values();
        for idx in 0..grid.len() {
            for comp in &phys {
                point_sq[idx] += comp[idx] * comp[idx];
            }
        }
    }
    let sum: f64 = point_sq.iter().map(|v| v.powf(q / 2.0)).sum();
    Ok((grid.cell_volume() * sum).powf(1.0 / q))
}

fn forcing_rng(forcing_seed: u64, sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(forcing_seed);
    rng.set_stream(0x534d_5200 + sample as u64);
    rng
}

/// Build the per-sample linear configuration with random `(f, g)` forcing.
fn sample_config(
    base: &SolverConfig,
    params: &SmrParams,
    forcing_seed: u64,
    sample: usize,
    kmax: i64,
    scale: f64,
) -> SolverConfig {
    let mut rng = forcing_rng(forcing_seed, sample);
    let mut cfg = base.clone();
    cfg.system = SystemKind::LinearStokes;
    let mut f = random_divfree_forcing(cfg.grid, kmax, &mut rng);
    f.scale(scale);
    let n_g = cfg.noise.count().max(1);
    let mut gs = Vec::with_capacity(n_g);
    for _ in 0..n_g {
        let mut g = random_divfree_forcing(cfg.grid, kmax, &mut rng);
        g.scale(scale);
        gs.push(g);
    }
    cfg.forcing.f = Some(f);
    cfg.forcing.g = gs;
    let space_norm_is_h1 = (params.delta - 0.0).abs() < 1e-12 && (params.q - 2.0).abs() < 1e-12;
    if !space_norm_is_h1 {
        cfg.extra_norms = vec![(1.0 + params.delta, params.q)];
    }
    if params.p > 2.0 {
        cfg.snapshot_every = (cfg.steps() / 16).max(1);
    }
    cfg
}

fn space_time_series<'a>(rec: &'a TrajectoryRecord, cfg: &SolverConfig, params: &SmrParams) -> &'a [f64] {
    let is_h1 = (params.delta - 0.0).abs() < 1e-12 && (params.q - 2.0).abs() < 1e-12;
    if is_h1 {
        &rec.h1
    } else {
        &rec.extra[cfg
            .extra_norms
            .iter()
            .position(|(s, q)| (*s - (1.0 + params.delta)).abs() < 1e-12 && (*q - params.q).abs() < 1e-12)
            .expect("configured")]
    }
}

fn evaluate_sample(
    cfg: &SolverConfig,
    params: &SmrParams,
    sample: usize,
) -> Result<Option<SmrSample>> {
    let t_end = cfg.t_end;
    let j_time = (t_end.powf(params.kappa + 1.0) / (params.kappa + 1.0)).powf(1.0 / params.p);
    let f_norm = bessel_norm(cfg.forcing.f.as_ref().unwrap(), -1.0 + params.delta, params.q)?;
    let g_norm = bessel_family_norm(&cfg.forcing.g, params.delta, params.q)?;
    let j_norm = j_time * (f_norm + g_norm);
    if j_norm == 0.0 {
        return Ok(None); // zero forcing sample skipped
    }

    let rec = solve_linear_stokes(cfg, sample)?;

    // weighted L^p in time of the H^{1+δ,q} series (left Riemann)
    let series = space_time_series(&rec, cfg, params);
    let mut lp = 0.0;
    for (i, &t) in rec.times.iter().enumerate() {
        if i + 1 == rec.times.len() {
            break;
        }
        let w = if params.kappa == 0.0 { 1.0 } else { t.powf(params.kappa) };
        lp += series[i].powf(params.p) * w * cfg.dt;
    }
    let space_time = lp.powf(1.0 / params.p);

    let (trace, interior) = if params.p > 2.0 {
        let s_trace = 1.0 + params.delta - 2.0 * (1.0 + params.kappa) / params.p;
        let s_int = 1.0 + params.delta - 2.0 / params.p;
        let eps = params.epsilon_frac * t_end;
        let mut sup_trace = 0.0f64;
        let mut sup_int = 0.0f64;
        for (t, snap) in &rec.snapshots {
            let b = besov_norm(snap, s_trace, params.q, params.p)?;
            sup_trace = sup_trace.max(b);
            if *t >= eps {
                sup_int = sup_int.max(besov_norm(snap, s_int, params.q, params.p)?);
            }
        }
        (sup_trace, Some(sup_int))
    } else {
        // p = q = 2 pair: C([0,T]; L²)
        (rec.l2.iter().cloned().fold(0.0, f64::max), None)
    };

    Ok(Some(SmrSample {
        sample,
        j_norm,
        ratio_space_time: space_time / j_norm,
        ratio_trace: trace / j_norm,
        ratio_interior: interior.map(|v| v / j_norm),
    }))
}

/// Run the SMR ensemble.
pub fn smr_estimate(
    base: &SolverConfig,
    params: &SmrParams,
    ensemble: usize,
    forcing_seed: u64,
    kmax: i64,
) -> Result<SmrReport> {
    if ensemble == 0 {
        return Err(Error::config("smr ensemble must be non-empty"));
    }
    if kmax < 1 || kmax > base.grid.dealias_cutoff() {
        return Err(Error::config("forcing band must sit inside the dealias band"));
    }
    let samples: Vec<SmrSample> = (0..ensemble)
        .into_par_iter()
        .map(|i| {
            let cfg = sample_config(base, params, forcing_seed, i, kmax, 1.0);
            evaluate_sample(&cfg, params, i)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut st: Vec<f64> = samples.iter().map(|s| s.ratio_space_time).collect();
    st.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let sup_space_time = st.last().copied().unwrap_or(0.0);
    let median = st.get(st.len() / 2).copied().unwrap_or(0.0);
    let p90 = st.get((st.len() as f64 * 0.9) as usize).copied().unwrap_or(0.0);
    let sup_trace = samples.iter().map(|s| s.ratio_trace).fold(0.0, f64::max);
    let sup_interior = if params.p > 2.0 {
        Some(samples.iter().filter_map(|s| s.ratio_interior).fold(0.0, f64::max))
    } else {
        None
    };
    Ok(SmrReport {
        params: *params,
        grid_n: base.grid.n(),
        samples,
        sup_space_time,
        sup_trace,
        sup_interior,
        median_space_time: median,
        p90_space_time: p90,
    })
}

/// Homogeneity audit: ratios must be invariant under `(f,g) → (θf, θg)`.
/// Returns the largest relative ratio deviation over the tested sample.
pub fn smr_homogeneity_check(
    base: &SolverConfig,
    params: &SmrParams,
    forcing_seed: u64,
    kmax: i64,
    theta: f64,
    sample: usize,
) -> Result<f64> {
    let cfg1 = sample_config(base, params, forcing_seed, sample, kmax, 1.0);
    let cfg2 = sample_config(base, params, forcing_seed, sample, kmax, theta);
    let s1 = evaluate_sample(&cfg1, params, sample)?.ok_or_else(|| Error::config("zero sample"))?;
    let s2 = evaluate_sample(&cfg2, params, sample)?.ok_or_else(|| Error::config("zero sample"))?;
    let mut worst = (s1.ratio_space_time - s2.ratio_space_time).abs()
        / s1.ratio_space_time.max(f64::MIN_POSITIVE);
    worst = worst
        .max((s1.ratio_trace - s2.ratio_trace).abs() / s1.ratio_trace.max(f64::MIN_POSITIVE));
    Ok(worst)
}

/// Closed-form cross-check for the `p=q=2`, `b=0`, `g=0` single-mode case:
/// returns (harness ratios, exact ratios) for the space-time and trace
/// norms.
pub fn smr_single_mode_closed_form(
    grid: TorusGrid,
    nu: f64,
    dt: f64,
    t_end: f64,
    k: &[i64],
) -> Result<((f64, f64), (f64, f64))> {
    let mut cfg = SolverConfig::basic(grid, dt, t_end, nu, 0);
    cfg.system = SystemKind::LinearStokes;
    cfg.scheme = crate::solver::Scheme::ExponentialEuler;
    // polarization ⟂ k (2-D)
    let mut f = SpectralField::zeros(grid);
    let knorm = ((k[0] * k[0] + k[1] * k[1]) as f64).sqrt();
    let pol = [-(k[1] as f64) / knorm, k[0] as f64 / knorm];
    for (c, &p) in pol.iter().enumerate() {
        if p != 0.0 {
            f.add_mode(c, k, Complex64::new(0.5 * p, 0.0))?;
        }
    }
    cfg.forcing.f = Some(f.clone());

    let params = SmrParams::l2_pair();
    let sample =
        evaluate_sample(&cfg, &params, 0)?.ok_or_else(|| Error::config("zero sample"))?;

    // continuum solution: û(t) = f̂ (1 − e^{−ν|k|²t})/(ν|k|²) per mode
    let ksq = (k[0] * k[0] + k[1] * k[1]) as f64;
    let mu = nu * ksq;
    let phi = |t: f64| (1.0 - (-mu * t).exp()) / mu;
    // ∫₀^T φ(t)² dt in closed form
    let int_phi_sq = (t_end - 2.0 * (1.0 - (-mu * t_end).exp()) / mu
        + (1.0 - (-2.0 * mu * t_end).exp()) / (2.0 * mu))
        / (mu * mu);
    let f_l2 = f.l2_norm();
    let h1_factor = (1.0 + ksq).sqrt();
    let exact_space_time = h1_factor * f_l2 * int_phi_sq.sqrt();
    let exact_trace = f_l2 * phi(t_end);
    let j = t_end.sqrt() * f_l2 / h1_factor; // ‖f‖_{H^{-1,2}} = (1+|k|²)^{-1/2}‖f‖_{L²}
    Ok(((sample.ratio_space_time, sample.ratio_trace), (exact_space_time / j, exact_trace / j)))
}
