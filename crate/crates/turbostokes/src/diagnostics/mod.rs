//! Theorem-linked verification harnesses.

pub mod energy;
pub mod regularization;
pub mod scaling;
pub mod serrin;
pub mod small_data;
pub mod smr;

pub use energy::{
    deterministic_residual_constant, energy_audit, energy_estimate_check, EnergyEstimateReport,
    EnergyLedger, EnergyStepEntry, C_T_MARGIN,
};
pub use regularization::{refinement_stability, regularization_monitor, RegularizationTable};
pub use scaling::{scaling_check, ScalingCheckReport};
pub use serrin::{serrin_consistency, serrin_monitor, SerrinAccumulator, SerrinReport};
pub use small_data::{small_data_survival, SurvivalRow, SurvivalTable};
pub use smr::{
    bessel_family_norm, random_divfree_forcing, smr_estimate, smr_homogeneity_check,
    smr_single_mode_closed_form, SmrParams, SmrReport, SmrSample,
};
