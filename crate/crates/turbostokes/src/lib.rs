//! Pseudospectral simulation lab for stochastic Navier–Stokes equations
//! with transport (Kraichnan) noise on the periodic torus.
//!
//! The crate provides:
//!
//! - spectral calculus on `𝕋^d` (`d ∈ {2,3}`): transforms, dealiasing,
//!   the Helmholtz–Leray projection and its elliptic companion solve;
//! - Bessel/Besov norm estimators, weighted-in-time norms, and the
//!   exponent arithmetic of the critical `(p, κ, q, δ)` parameter space;
//! - synthesis and auditing of divergence-free transport-noise families,
//!   the Itô correction tensor and the parabolicity margin;
//! - semi-implicit / exponential Euler–Maruyama integration of the
//!   turbulent Stokes system and the full projected nonlinear system,
//!   in Itô or Stratonovich mode, with seeded reproducible ensembles;
//! - diagnostic harnesses: energy identity ledger, a-priori energy bound
//!   check, Serrin blow-up monitor, empirical stochastic maximal
//!   regularity ratios, scaling-invariance coupling, small-data survival
//!   tables and a regularization monitor.
//!
//! Start with the `examples/` directory: each example is a runnable tour
//! of one capability (`cargo run --release --example <name>`).

pub mod diagnostics;
pub mod error;
pub mod experiment;
pub mod fft;
pub mod field;
pub mod grid;
pub mod noise;
pub mod ops;
pub mod projection;
pub mod snapshot;
pub mod solver;
pub mod spaces;
pub(crate) mod tables;
pub mod viscosity;

pub use error::{Error, Result};
pub use field::{ScalarSpectralField, SpectralField};
pub use grid::TorusGrid;
