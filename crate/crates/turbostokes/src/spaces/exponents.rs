//! Exponent and criticality arithmetic for the `(p, κ, q, δ)` parameter
//! space.
//!
//! The critical weight is `κ_c = −1 + (p/2)(2 + δ − d/q)`; a tuple is
//! admissible when the integrability header holds (`q ∈ [2,∞)`,
//! `p ∈ (2,∞)`, `κ ∈ [0, p/2−1)`, or `p = q = 2`, `κ = 0`), the
//! smoothness shift sits in `δ ∈ (−1, 0]` with `d/(2+δ) < q < d/(−δ)`,
//! and `2(1+κ)/p + d/q ≤ 2+δ`; criticality is equality in the last
//! condition. The trace smoothness is `1 + δ − 2(1+κ)/p`. Serrin pairs
//! carry `γ₀ = 2/p₀ + d/q₀ − 1`.

use serde::{Deserialize, Serialize};

const EPS: f64 = 1e-12;

/// `(d, p, q, δ, κ)` tuple.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterTuple {
    pub d: u32,
    pub p: f64,
    pub q: f64,
    pub delta: f64,
    pub kappa: f64,
}

/// Outcome of `kappa_critical`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct KappaCritical {
    pub kappa_c: f64,
    /// `κ_c ∈ [0, p/2−1)` (or `κ_c = 0` on the `p = 2` branch).
    pub admissible: bool,
}

/// Full assessment of a parameter tuple.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ParameterAssessment {
    pub admissible: bool,
    pub critical: bool,
    pub trace_smoothness: f64,
    pub kappa_c: f64,
    pub header_ok: bool,
    pub delta_ok: bool,
    pub q_window_ok: bool,
    pub integrability_ok: bool,
}

/// Blow-up test pair with derived smoothness `γ₀`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SerrinPair {
    pub p0: f64,
    pub q0: f64,
    pub delta0: f64,
    pub gamma0: f64,
    /// `2/p₀ + d/q₀ = 1`, the classical `L^{p₀}(L^{q₀})` criterion.
    pub classic: bool,
}

/// `κ_c = −1 + (p/2)(2 + δ − d/q)` with its admissibility flag.
pub fn kappa_critical(d: u32, p: f64, q: f64, delta: f64) -> KappaCritical {
    let kappa_c = -1.0 + (p / 2.0) * (2.0 + delta - d as f64 / q);
    let admissible = if (p - 2.0).abs() < EPS {
        kappa_c.abs() < EPS
    } else {
        kappa_c >= -EPS && kappa_c < p / 2.0 - 1.0 - EPS
    };
    KappaCritical { kappa_c, admissible }
}

/// Admissibility, criticality and trace smoothness of a tuple.
pub fn validate_parameters(t: &ParameterTuple) -> ParameterAssessment {
    let d = t.d as f64;
    let two_branch = (t.p - 2.0).abs() < EPS && (t.q - 2.0).abs() < EPS && t.kappa.abs() < EPS;
    let general_branch =
        t.p > 2.0 + EPS && t.q >= 2.0 - EPS && t.kappa >= -EPS && t.kappa < t.p / 2.0 - 1.0 - EPS;
    let header_ok = two_branch || general_branch;

    let delta_ok = t.delta > -1.0 + EPS && t.delta <= EPS;
    let q_upper = if t.delta >= -EPS { f64::INFINITY } else { d / (-t.delta) };
    let q_window_ok = t.q > d / (2.0 + t.delta) + EPS && t.q < q_upper - EPS;

    let lhs = 2.0 * (1.0 + t.kappa) / t.p + d / t.q;
    let rhs = 2.0 + t.delta;
    let integrability_ok = lhs <= rhs + EPS;
    let critical = (lhs - rhs).abs() < EPS;

    let kc = kappa_critical(t.d, t.p, t.q, t.delta);
    ParameterAssessment {
        admissible: header_ok && delta_ok && q_window_ok && integrability_ok,
        critical,
        trace_smoothness: 1.0 + t.delta - 2.0 * (1.0 + t.kappa) / t.p,
        kappa_c: kc.kappa_c,
        header_ok,
        delta_ok,
        q_window_ok,
        integrability_ok,
    }
}

/// Serrin pair with `γ₀ = 2/p₀ + d/q₀ − 1` and the classic-criterion flag.
pub fn serrin_exponents(d: u32, p0: f64, q0: f64, delta0: f64) -> SerrinPair {
    let gamma0 = 2.0 / p0 + d as f64 / q0 - 1.0;
    SerrinPair { p0, q0, delta0, gamma0, classic: gamma0.abs() < EPS }
}
