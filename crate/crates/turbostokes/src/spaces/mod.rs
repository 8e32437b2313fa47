//! Function-space machinery: Bessel/Besov norm estimators, weighted time
//! norms, exponent calculators and the parabolic scaling map.

pub mod exponents;
pub mod norms;
pub mod scaling;
pub mod weights;

pub use exponents::{
    kappa_critical, serrin_exponents, validate_parameters, KappaCritical, ParameterAssessment,
    ParameterTuple, SerrinPair,
};
pub use norms::{besov_norm, bessel_norm, lq_norm};
pub use scaling::scaling_transform;
pub use weights::{weighted_time_norm, WeightedTimeGrid};
