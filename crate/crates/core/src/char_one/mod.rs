//! Characteristic-one semirings: `R_max` in log coordinates, the deformed
//! addition `+_w` with weight `ρ^{S(α)}`, the `ρ`-adic metric, and checkers
//! for the equations a weight `w(α)` must satisfy.

mod deform;
mod maxplus;
mod weights;

pub use deform::{
    deform_add, deform_partial_sum, deform_sum, fn_semiring_deform_add, fn_semiring_partial_sum, rho_metric,
    DeformContext, FnSemiringElem,
};
pub use maxplus::{entropy, MaxPlusElem};
pub use weights::{
    check_cocycle, check_symmetric_multi, log_w_multi, positivity_probe, ratio_f64, w_from_chi, ChiHom,
    CocycleReport, ConstantWeight, Frac, LogWeight, PositivityWitness, SymmetryReport, PROBE_PRIMES,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CharOneError {
    #[error("value {0} is not allowed here")]
    NotFinite(f64),
    #[error("temperature must be finite and non-negative, got {0}")]
    BadTemperature(f64),
    #[error("exponent must be positive, got {0}")]
    BadExponent(f64),
    #[error("alpha = {0} is outside the allowed range")]
    AlphaOutOfRange(f64),
    #[error("partial sums need at least one term")]
    ZeroTerms,
    #[error("the metric is undefined at zero")]
    ZeroInMetric,
    #[error("point sets differ: {left} vs {right} values, {temps} temperatures")]
    DomainMismatch { left: usize, right: usize, temps: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("character evaluated at a non-positive rational")]
    NonPositive,
    #[error("weights do not sum to one")]
    NotASimplexPoint,
    #[error("not a partition of the index set")]
    BadPartition,
    #[error("at most 8 parts are supported, got {0}")]
    TooManyParts(usize),
}
