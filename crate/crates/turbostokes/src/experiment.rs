//! Experiment specs, orchestration and persistence.
//!
//! A spec is a TOML file with one table per concern; every run echoes the
//! derived quantities (critical weight, coercivity margin, noise bounds)
//! into a manifest before anything is integrated, and all series are
//! written with full float precision so reruns are byte-identical.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::diagnostics::{
    energy_estimate_check, scaling_check, serrin_consistency, small_data_survival, smr_estimate,
    smr_homogeneity_check, SmrParams,
};
use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::TorusGrid;
use crate::noise::{synthesize_kraichnan, NoiseFamily, NoiseManifest, NonlinearityPreset};
use crate::solver::{
    run_ensemble, NoiseInterpretation, Scheme, SolverConfig, SystemKind, TrajectoryRecord,
};
use crate::spaces::exponents::{
    kappa_critical, serrin_exponents, validate_parameters, ParameterTuple,
};
use crate::viscosity::ViscosityTensor;

/// Known experiment presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Simulate,
    EnergyCheck,
    ScalingCheck,
    SmrEstimate,
    SerrinMonitor,
    SmallData,
    Exponents,
    NoiseInfo,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub dim: usize,
    pub n: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    pub dt: f64,
    pub t_end: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViscositySpec {
    /// Constant isotropic viscosity `ν̄`.
    pub nu: f64,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    /// Kraichnan synthesis: number of scalar Brownian directions.
    pub n_b: Option<usize>,
    pub zeta: Option<f64>,
    pub amplitude: Option<f64>,
    pub seed: Option<u64>,
    /// Alternative: constant-in-space fields, one vector per direction.
    pub constant: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub time_dependent: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonlinearitySpec {
    /// `zero`, `linear` or `quadratic`.
    pub kind: String,
    #[serde(default)]
    pub gammas: Vec<f64>,
    pub cap: Option<f64>,
}

impl Default for NonlinearitySpec {
    fn default() -> Self {
        NonlinearitySpec { kind: "zero".into(), gammas: Vec::new(), cap: None }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    /// `ito` or `stratonovich`.
    #[serde(default = "default_interpretation")]
    pub interpretation: String,
    /// `semi-implicit` or `exponential`.
    #[serde(default = "default_scheme")]
    pub scheme: String,
    /// `navier-stokes` or `linear-stokes`.
    #[serde(default = "default_system")]
    pub system: String,
    #[serde(default = "default_blowup")]
    pub blowup_factor: f64,
    #[serde(default)]
    pub snapshot_every: usize,
}

fn default_interpretation() -> String {
    "ito".into()
}
fn default_scheme() -> String {
    "semi-implicit".into()
}
fn default_system() -> String {
    "navier-stokes".into()
}
fn default_blowup() -> f64 {
    1e6
}

impl Default for SolverSpec {
    fn default() -> Self {
        SolverSpec {
            interpretation: default_interpretation(),
            scheme: default_scheme(),
            system: default_system(),
            blowup_factor: default_blowup(),
            snapshot_every: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    /// `zero`, `taylor-green` or `power-law`.
    pub kind: String,
    #[serde(default = "one")]
    pub amplitude: f64,
    /// Spectral decay exponent for `power-law` data.
    pub alpha: Option<f64>,
    pub kmax: Option<i64>,
    pub seed: Option<u64>,
}

fn one() -> f64 {
    1.0
}

impl Default for InitialSpec {
    fn default() -> Self {
        InitialSpec { kind: "zero".into(), amplitude: 1.0, alpha: None, kmax: None, seed: None }
    }
}

/// `(p, q, δ, κ)` exponent block; `kappa` defaults to the critical weight.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterSpec {
    pub p: f64,
    pub q: f64,
    pub delta: f64,
    pub kappa: Option<f64>,
    /// Serrin pair, used by `exponents` and `serrin-monitor`.
    pub p0: Option<f64>,
    pub q0: Option<f64>,
    pub delta0: Option<f64>,
}

impl Default for ParameterSpec {
    fn default() -> Self {
        ParameterSpec {
            p: 2.0,
            q: 2.0,
            delta: 0.0,
            kappa: Some(0.0),
            p0: Some(2.0),
            q0: Some(2.0),
            delta0: Some(0.0),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingSpec {
    pub lambda: f64,
    #[serde(default = "default_compare_every")]
    pub compare_every: usize,
}

fn default_compare_every() -> usize {
    16
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmrSpec {
    #[serde(default = "two")]
    pub p: f64,
    #[serde(default = "two")]
    pub q: f64,
    #[serde(default)]
    pub kappa: f64,
    #[serde(default)]
    pub delta: f64,
    #[serde(default = "default_kmax")]
    pub kmax: i64,
    #[serde(default = "default_smr_ensemble")]
    pub ensemble: usize,
    pub forcing_seed: Option<u64>,
}

fn two() -> f64 {
    2.0
}
fn default_kmax() -> i64 {
    4
}
fn default_smr_ensemble() -> usize {
    64
}

impl Default for SmrSpec {
    fn default() -> Self {
        SmrSpec {
            p: 2.0,
            q: 2.0,
            kappa: 0.0,
            delta: 0.0,
            kmax: 4,
            ensemble: 64,
            forcing_seed: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SerrinSpec {
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_epsilon() -> f64 {
    0.05
}

impl Default for SerrinSpec {
    fn default() -> Self {
        SerrinSpec { epsilon: default_epsilon() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmallDataSpec {
    pub amplitudes: Vec<f64>,
}

impl Default for SmallDataSpec {
    fn default() -> Self {
        SmallDataSpec { amplitudes: vec![4.0, 2.0, 1.0] }
    }
}

/// Complete experiment description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub preset: Preset,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_paths")]
    pub paths: usize,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub allow_inadmissible: bool,
    pub grid: Option<GridSpec>,
    pub time: Option<TimeSpec>,
    pub viscosity: Option<ViscositySpec>,
    #[serde(default)]
    pub noise: NoiseSpec,
    #[serde(default)]
    pub nonlinearity: NonlinearitySpec,
    #[serde(default)]
    pub solver: SolverSpec,
    #[serde(default)]
    pub initial: InitialSpec,
    #[serde(default)]
    pub parameters: ParameterSpec,
    pub scaling: Option<ScalingSpec>,
    #[serde(default)]
    pub smr: SmrSpec,
    #[serde(default)]
    pub serrin: SerrinSpec,
    #[serde(default)]
    pub small_data: SmallDataSpec,
}

fn default_seed() -> u64 {
    0
}
fn default_paths() -> usize {
    64
}

/// Echo of all derived quantities, written into the manifest before the
/// run starts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivedQuantities {
    pub kappa: f64,
    pub kappa_c: f64,
    pub admissible: bool,
    pub critical: bool,
    pub trace_smoothness: f64,
    pub serrin_gamma0: Option<f64>,
    pub serrin_classic: Option<bool>,
    pub coercivity_nu: Option<f64>,
    pub noise_sup_l2: Option<f64>,
    pub growth_m1: f64,
    pub growth_m2: f64,
    pub config_digest: Option<String>,
}

/// Parse a spec file without semantic validation (callers may still
/// apply flag overrides before validating).
pub fn parse_spec(path: &Path) -> Result<ExperimentSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { path: path.display().to_string(), message: e.to_string() })?;
    toml::from_str(&text)
        .map_err(|e| Error::Parse { path: path.display().to_string(), message: e.to_string() })
}

/// Load and validate a spec file.
pub fn load_spec(path: &Path) -> Result<ExperimentSpec> {
    let spec = parse_spec(path)?;
    validate_spec(&spec)?;
    Ok(spec)
}

/// Validation shared by file loading and programmatic construction.
pub fn validate_spec(spec: &ExperimentSpec) -> Result<()> {
    if needs_solver(spec.preset) {
        let grid = spec.grid.as_ref().ok_or_else(|| Error::config("missing [grid] table"))?;
        TorusGrid::new(grid.dim, grid.n)?;
        spec.time.as_ref().ok_or_else(|| Error::config("missing [time] table"))?;
        spec.viscosity.as_ref().ok_or_else(|| Error::config("missing [viscosity] table"))?;
        let d = grid.dim as u32;
        let tuple = parameter_tuple(spec, d);
        let assessment = validate_parameters(&tuple);
        if !assessment.admissible && !spec.allow_inadmissible {
            return Err(Error::config(format!(
                "parameter tuple (d={}, p={}, q={}, δ={}, κ={}) is inadmissible \
                 (header_ok={}, δ_ok={}, q_window_ok={}, integrability_ok={}); \
                 the admissible weights satisfy κ ∈ [0, p/2−1); \
                 pass --allow-inadmissible to override",
                d,
                tuple.p,
                tuple.q,
                tuple.delta,
                tuple.kappa,
                assessment.header_ok,
                assessment.delta_ok,
                assessment.q_window_ok,
                assessment.integrability_ok,
            )));
        }
        if spec.solver.interpretation == "stratonovich" && spec.noise.time_dependent {
            return Err(Error::unsupported(
                "stratonovich interpretation with time-dependent noise: \
                 the Ito correction requires (t,ω)-independent b",
            ));
        }
    }
    Ok(())
}

fn needs_solver(preset: Preset) -> bool {
    !matches!(preset, Preset::Exponents | Preset::NoiseInfo)
}

fn parameter_tuple(spec: &ExperimentSpec, d: u32) -> ParameterTuple {
    let p = spec.parameters.p;
    let q = spec.parameters.q;
    let delta = spec.parameters.delta;
    let kappa =
        spec.parameters.kappa.unwrap_or_else(|| kappa_critical(d, p, q, delta).kappa_c);
    ParameterTuple { d, p, q, delta, kappa }
}

/// Build the noise family of a spec.
pub fn build_noise(spec: &ExperimentSpec, dim: usize) -> Result<NoiseFamily> {
    let mut family = if let Some(vectors) = &spec.noise.constant {
        let vs: Vec<[f64; 3]> = vectors
            .iter()
            .map(|v| {
                let mut arr = [0.0; 3];
                for (i, x) in v.iter().take(dim).enumerate() {
                    arr[i] = *x;
                }
                arr
            })
            .collect();
        NoiseFamily::constant_fields(dim, &vs)
    } else if let Some(n_b) = spec.noise.n_b {
        synthesize_kraichnan(
            dim,
            n_b,
            spec.noise.zeta.unwrap_or(1.0),
            spec.noise.amplitude.unwrap_or(0.1),
            spec.noise.seed.unwrap_or(0),
        )?
    } else {
        NoiseFamily::empty(dim)
    };
    family.set_time_dependent(spec.noise.time_dependent);
    Ok(family)
}

fn build_nonlinearity(spec: &ExperimentSpec) -> Result<NonlinearityPreset> {
    match spec.nonlinearity.kind.as_str() {
        "zero" => Ok(NonlinearityPreset::zero()),
        "linear" => Ok(NonlinearityPreset::linear_g(spec.nonlinearity.gammas.clone())),
        "quadratic" => Ok(NonlinearityPreset::quadratic_g(
            spec.nonlinearity.gammas.clone(),
            spec.nonlinearity.cap.unwrap_or(10.0),
        )),
        other => Err(Error::config(format!("unknown nonlinearity kind '{other}'"))),
    }
}

/// Build the solver configuration of a spec.
pub fn build_config(spec: &ExperimentSpec) -> Result<SolverConfig> {
    let grid_spec = spec.grid.as_ref().ok_or_else(|| Error::config("missing [grid] table"))?;
    let time = spec.time.as_ref().ok_or_else(|| Error::config("missing [time] table"))?;
    let visc = spec.viscosity.as_ref().ok_or_else(|| Error::config("missing [viscosity] table"))?;
    let grid = TorusGrid::new(grid_spec.dim, grid_spec.n)?;
    let interpretation = match spec.solver.interpretation.as_str() {
        "ito" => NoiseInterpretation::Ito,
        "stratonovich" => NoiseInterpretation::Stratonovich,
        other => return Err(Error::config(format!("unknown interpretation '{other}'"))),
    };
    let scheme = match spec.solver.scheme.as_str() {
        "semi-implicit" => Scheme::SemiImplicitEuler,
        "exponential" => Scheme::ExponentialEuler,
        other => return Err(Error::config(format!("unknown scheme '{other}'"))),
    };
    let system = match spec.solver.system.as_str() {
        "navier-stokes" => SystemKind::NavierStokes,
        "linear-stokes" => SystemKind::LinearStokes,
        other => return Err(Error::config(format!("unknown system '{other}'"))),
    };
    Ok(SolverConfig {
        grid,
        dt: time.dt,
        t_end: time.t_end,
        interpretation,
        scheme,
        system,
        viscosity: ViscosityTensor::constant_isotropic(grid.dim(), visc.nu),
        noise: build_noise(spec, grid.dim())?,
        nonlinearity: build_nonlinearity(spec)?,
        forcing: Default::default(),
        blowup_factor: spec.solver.blowup_factor,
        seed: spec.seed,
        snapshot_every: spec.solver.snapshot_every,
        extra_norms: Vec::new(),
        allow_noncoercive: spec.allow_inadmissible,
    })
}

/// Build the initial data of a spec.
pub fn build_initial(spec: &ExperimentSpec, grid: TorusGrid) -> Result<SpectralField> {
    match spec.initial.kind.as_str() {
        "zero" => Ok(SpectralField::zeros(grid)),
        "taylor-green" => {
            if grid.dim() != 2 {
                return Err(Error::config("taylor-green initial data is 2-D"));
            }
            Ok(crate::solver::taylor_green(grid, spec.initial.amplitude))
        }
        "power-law" => {
            let mut f = crate::field::random_power_law_field(
                grid,
                spec.initial.alpha.unwrap_or(2.0),
                spec.initial.kmax.unwrap_or(grid.dealias_cutoff()),
                spec.initial.seed.unwrap_or(1),
            );
            f.scale(spec.initial.amplitude);
            Ok(crate::projection::helmholtz_project(&f))
        }
        other => Err(Error::config(format!("unknown initial data kind '{other}'"))),
    }
}

/// Compute the manifest echo.
pub fn derived_quantities(spec: &ExperimentSpec) -> Result<DerivedQuantities> {
    let dim = spec.grid.as_ref().map(|g| g.dim).unwrap_or(2);
    let tuple = parameter_tuple(spec, dim as u32);
    let assessment = validate_parameters(&tuple);
    let serrin = match (spec.parameters.p0, spec.parameters.q0) {
        (Some(p0), Some(q0)) => {
            Some(serrin_exponents(dim as u32, p0, q0, spec.parameters.delta0.unwrap_or(0.0)))
        }
        _ => None,
    };
    let mut out = DerivedQuantities {
        kappa: tuple.kappa,
        kappa_c: assessment.kappa_c,
        admissible: assessment.admissible,
        critical: assessment.critical,
        trace_smoothness: assessment.trace_smoothness,
        serrin_gamma0: serrin.map(|s| s.gamma0),
        serrin_classic: serrin.map(|s| s.classic),
        coercivity_nu: None,
        noise_sup_l2: None,
        growth_m1: 0.0,
        growth_m2: 0.0,
        config_digest: None,
    };
    if needs_solver(spec.preset) {
        let cfg = build_config(spec)?;
        out.coercivity_nu = Some(cfg.coercivity()?);
        out.noise_sup_l2 = Some(cfg.noise.measured_sup_l2(cfg.grid));
        let cert = cfg.nonlinearity.growth_certificate();
        out.growth_m1 = cert.m1;
        out.growth_m2 = cert.m2;
        out.config_digest = Some(cfg.digest());
    }
    Ok(out)
}

/// Delimited-text series of one trajectory, full float precision.
pub fn series_text(rec: &TrajectoryRecord, extra_names: &[String]) -> String {
    let mut out = String::new();
    let _ = write!(out, "# time\tl2\th1");
    for name in extra_names {
        let _ = write!(out, "\t{name}");
    }
    let _ = writeln!(out, "\tblown");
    for i in 0..rec.times.len() {
        let _ = write!(out, "{:.17e}\t{:.17e}\t{:.17e}", rec.times[i], rec.l2[i], rec.h1[i]);
        for series in &rec.extra {
            let _ = write!(out, "\t{:.17e}", series[i]);
        }
        let _ = writeln!(out, "\t0");
    }
    if rec.blown_up {
        let _ = writeln!(out, "# blown_up at sigma={:.17e}", rec.sigma);
    }
    out
}

/// Outcome of `run_experiment`, with the process exit code it maps to.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentOutcome {
    pub preset: Preset,
    pub pass: bool,
    pub summary: serde_json::Value,
    pub out_dir: Option<PathBuf>,
}

impl ExperimentOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            3
        }
    }
}

fn write_json(dir: &Path, name: &str, value: &serde_json::Value) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(path, serde_json::to_string_pretty(value).expect("json"))?;
    Ok(())
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<()> {
    std::fs::write(dir.join(name), text)?;
    Ok(())
}

/// Run a validated spec; writes artifacts under `spec.out` when present.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    validate_spec(spec)?;
    let out_dir = spec.out.clone();
    if let Some(dir) = &out_dir {
        std::fs::create_dir_all(dir)?;
    }
    let derived = derived_quantities(spec)?;
    let manifest = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "spec": spec,
        "derived": derived,
    });
    if let Some(dir) = &out_dir {
        write_json(dir, "manifest.json", &manifest)?;
    }

    let outcome = match spec.preset {
        Preset::Exponents => run_exponents(spec, &derived)?,
        Preset::NoiseInfo => run_noise_info(spec)?,
        Preset::Simulate => run_simulate(spec, out_dir.as_deref())?,
        Preset::EnergyCheck => run_energy_check(spec, out_dir.as_deref())?,
        Preset::ScalingCheck => run_scaling_check(spec)?,
        Preset::SmrEstimate => run_smr(spec)?,
        Preset::SerrinMonitor => run_serrin(spec)?,
        Preset::SmallData => run_small_data(spec)?,
    };
    if let Some(dir) = &out_dir {
        write_json(dir, "report.json", &outcome.summary)?;
    }
    Ok(ExperimentOutcome { out_dir, ..outcome })
}

fn run_exponents(spec: &ExperimentSpec, derived: &DerivedQuantities) -> Result<ExperimentOutcome> {
    Ok(ExperimentOutcome {
        preset: spec.preset,
        pass: true,
        summary: serde_json::to_value(derived).expect("json"),
        out_dir: None,
    })
}

fn run_noise_info(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let grid_spec = spec.grid.as_ref().ok_or_else(|| Error::config("missing [grid] table"))?;
    let grid = TorusGrid::new(grid_spec.dim, grid_spec.n)?;
    let family = build_noise(spec, grid.dim())?;
    let nu = spec.viscosity.as_ref().map(|v| v.nu).unwrap_or(1.0);
    let a = ViscosityTensor::constant_isotropic(grid.dim(), nu);
    let manifest = NoiseManifest::new(&family, &a, grid, 1.0);
    Ok(ExperimentOutcome {
        preset: spec.preset,
        pass: true,
        summary: serde_json::to_value(&manifest).expect("json"),
        out_dir: None,
    })
}

fn run_simulate(spec: &ExperimentSpec, out_dir: Option<&Path>) -> Result<ExperimentOutcome> {
    let cfg = build_config(spec)?;
    let u0 = build_initial(spec, cfg.grid)?;
    let records = run_ensemble(|_| u0.clone(), &cfg, spec.paths)?;
    if let Some(dir) = out_dir {
        for rec in &records {
            write_text(dir, &format!("path_{:03}.tsv", rec.path), &series_text(rec, &[]))?;
        }
    }
    let survived = records.iter().filter(|r| r.survived()).count();
    Ok(ExperimentOutcome {
        preset: spec.preset,
        pass: true,
        summary: serde_json::json!({
            "paths": records.len(),
            "survived": survived,
            "sigma_min": records.iter().map(|r| r.sigma).fold(f64::INFINITY, f64::min),
            "config_digest": cfg.digest(),
        }),
        out_dir: None,
    })
}

fn run_energy_check(spec: &ExperimentSpec, out_dir: Option<&Path>) -> Result<ExperimentOutcome> {
    let cfg = build_config(spec)?;
    let u0 = build_initial(spec, cfg.grid)?;
    let records = run_ensemble(|_| u0.clone(), &cfg, spec.paths)?;
    let report = energy_estimate_check(&cfg, &records, None)?;
    if let Some(dir) = out_dir {
        for rec in records.iter().take(4) {
            write_text(dir, &format!("path_{:03}.tsv", rec.path), &series_text(rec, &[]))?;
        }
    }
    let pass = report.applicable && report.pass;
    Ok(ExperimentOutcome {
        preset: spec.preset,
        pass,
        summary: serde_json::to_value(&report).expect("json"),
        out_dir: None,
    })
}

fn run_scaling_check(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let cfg = build_config(spec)?;
    let u0 = build_initial(spec, cfg.grid)?;
    let scaling =
        spec.scaling.clone().ok_or_else(|| Error::config("missing [scaling] table"))?;
    let report = scaling_check(&u0, &cfg, scaling.lambda, scaling.compare_every)?;
    let tol = if cfg.noise.is_empty() { 1e-3 } else { 5e-3 };
    let pass = report.max_rel_error <= tol;
    Ok(ExperimentOutcome {
        preset: spec.preset,
        pass,
        summary: serde_json::json!({
            "lambda": report.lambda,
            "matched_times": report.matched_times,
            "rel_errors": report.rel_errors,
            "max_rel_error": report.max_rel_error,
            "tolerance": tol,
        }),
        out_dir: None,
    })
}

fn run_smr(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let cfg = build_config(spec)?;
    let params = SmrParams {
        p: spec.smr.p,
        q: spec.smr.q,
        kappa: spec.smr.kappa,
        delta: spec.smr.delta,
        epsilon_frac: 0.25,
    };
    let seed = spec.smr.forcing_seed.unwrap_or(spec.seed ^ 0x5a5a);
    let report = smr_estimate(&cfg, &params, spec.smr.ensemble, seed, spec.smr.kmax)?;
    let doubled = smr_estimate(&cfg, &params, spec.smr.ensemble * 2, seed, spec.smr.kmax)?;
    let homogeneity = smr_homogeneity_check(&cfg, &params, seed, spec.smr.kmax, 3.0, 0)?;
    let drift =
        (doubled.sup_space_time - report.sup_space_time).abs() / report.sup_space_time;
    let pass = homogeneity < 1e-10 && drift < 0.2;
    Ok(ExperimentOutcome {
        preset: spec.preset,
        pass,
        summary: serde_json::json!({
            "sup_space_time": report.sup_space_time,
            "sup_trace": report.sup_trace,
            "median_space_time": report.median_space_time,
            "p90_space_time": report.p90_space_time,
            "sup_space_time_doubled": doubled.sup_space_time,
            "ensemble_drift": drift,
            "homogeneity_deviation": homogeneity,
            "samples": report.samples.len(),
        }),
        out_dir: None,
    })
}

fn run_serrin(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let cfg = build_config(spec)?;
    let u0 = build_initial(spec, cfg.grid)?;
    let records = run_ensemble(|_| u0.clone(), &cfg, spec.paths)?;
    let pair = serrin_exponents(
        cfg.grid.dim() as u32,
        spec.parameters.p0.unwrap_or(2.0),
        spec.parameters.q0.unwrap_or(2.0),
        spec.parameters.delta0.unwrap_or(0.0),
    );
    let report = serrin_consistency(&records, &pair, spec.serrin.epsilon, &cfg)?;
    let pass = report.consistency_violations == 0;
    Ok(ExperimentOutcome {
        preset: spec.preset,
        pass,
        summary: serde_json::to_value(&report).expect("json"),
        out_dir: None,
    })
}

fn run_small_data(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let cfg = build_config(spec)?;
    let u0 = build_initial(spec, cfg.grid)?;
    let table = small_data_survival(&cfg, &u0, &spec.small_data.amplitudes, spec.paths)?;
    let pass = table.monotone_within_2se;
    Ok(ExperimentOutcome {
        preset: spec.preset,
        pass,
        summary: serde_json::to_value(&table).expect("json"),
        out_dir: None,
    })
}
