use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a truncated series needs at least one coefficient")]
    EmptySeries,

    #[error("inner series of a composition must vanish at the origin (constant term {0})")]
    NonZeroConstantTerm(f64),

    #[error("series is not invertible at the origin: {0}")]
    NotInvertible(&'static str),

    #[error(
        "series reversion failed its round-trip check (residual {residual:e} at degree {degree})"
    )]
    ReversionCheck { degree: usize, residual: f64 },

    #[error("derivative order {k} exceeds truncation order {order}")]
    OrderExceeded { k: usize, order: usize },

    #[error("{function}({argument}) is outside the supported domain: {reason}")]
    Domain {
        function: &'static str,
        argument: f64,
        reason: &'static str,
    },

    #[error("phase exponent must be positive and finite, got {0}")]
    InvalidExponent(f64),

    #[error("perturbation coefficient a_{index} is not finite")]
    InvalidPerturbation { index: usize },

    #[error("|x| = {x} is not inside the convergence radius R0 = {r0}")]
    OutsideRadius { x: f64, r0: f64 },

    #[error("negative x = {x} is not admissible for the non-integer exponent p = {p}")]
    NegativeArgument { x: f64, p: f64 },

    #[error("operation requires an integer exponent, got p = {0}")]
    NonIntegerExponent(f64),

    #[error("invalid amplitude: {0}")]
    InvalidAmplitude(String),

    #[error("amplitude support radius {support} exceeds the certified validity radius {validity}")]
    SupportViolation { support: f64, validity: f64 },

    #[error("term count N = {n} is too small for p = {p} (need {requirement})")]
    TooFewTerms {
        n: usize,
        p: f64,
        requirement: &'static str,
    },

    #[error("lambda must be positive and finite, got {0}")]
    NonPositiveLambda(f64),

    #[error("oracle failed to converge at lambda = {lambda}: orders disagree by {discrepancy:e} (relative)")]
    OracleConvergence { lambda: f64, discrepancy: f64 },

    #[error("slope fit needs at least 3 points with positive lambda and residual: {0}")]
    SlopeInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
