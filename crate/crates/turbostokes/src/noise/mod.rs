//! Transport-noise synthesis, Itô correction, Brownian drivers and
//! nonlinearity presets.

mod driver;
mod family;
mod nonlinearity;

pub use driver::{aggregate_increments, sample_increments, scaled_increments, BrownianDriver};
pub use family::{
    coercivity_nu, synthesize_kraichnan, ModePhase, NoiseFamily, NoiseManifest, NoiseMode,
};
pub use nonlinearity::{ForceSpec, GSpec, GrowthCertificate, NonlinearityPreset};
