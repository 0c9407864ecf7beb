//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building or evaluating models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A probability table row does not sum to one.
    #[error("table not normalized at input {input:?}: sum = {sum}")]
    NotNormalized { input: Vec<usize>, sum: f64 },

    /// A probability entry is below zero (beyond tolerance).
    #[error("negative entry {value} at output {output:?}, input {input:?}")]
    NegativeEntry {
        output: Vec<usize>,
        input: Vec<usize>,
        value: f64,
    },

    /// A dense table has the wrong number of cells for its scenario.
    #[error("table covers {got} cells, scenario requires {expected}")]
    MissingCell { expected: usize, got: usize },

    /// Two objects built over different scenarios were combined.
    #[error("scenario mismatch: {0}")]
    ScenarioMismatch(String),

    /// A conditional functional met a joint table or vice versa.
    #[error("kind mismatch: expected {expected} table, got {got}")]
    KindMismatch {
        expected: &'static str,
        got: &'static str,
    },

    /// Unknown builtin functional name.
    #[error("unknown builtin functional `{0}`")]
    UnknownName(String),

    /// A `_md` builtin was requested without (xi, eta).
    #[error("missing parameters: {0}")]
    MissingParams(&'static str),

    /// xi or eta is not strictly positive.
    #[error("parameters must be strictly positive: xi = {xi}, eta = {eta}")]
    NonPositiveParams { xi: f64, eta: f64 },

    /// Invalid measurement-dependence parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// No input distribution can satisfy the box constraint.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The xi grid of a sweep leaves the feasible region.
    #[error("infeasible xi = {0}: need 0 < xi and K*xi <= 1")]
    InfeasibleXi(f64),

    /// An enumeration would exceed the configured cap.
    #[error("enumeration of {required} candidates exceeds cap {cap}")]
    TooLarge { required: u128, cap: u128 },

    /// The closed-form critical q has a vanishing denominator.
    #[error("degenerate denominator: xi*beta_alg_tilde = xi*eta*beta_loc = {0}")]
    DegenerateDenominator(f64),

    /// A correlator spec references bits or inputs outside the scenario.
    #[error("invalid correlator spec: {0}")]
    InvalidSpec(String),

    /// Observables inside one measurement do not commute.
    #[error("observables {i} and {j} do not commute (max deviation {dev:.3e})")]
    NotCommuting { i: usize, j: usize, dev: f64 },

    /// An observable is not a Hermitian involution.
    #[error("observable {i} is not a Hermitian involution (max deviation {dev:.3e})")]
    NotInvolutive { i: usize, dev: f64 },

    /// Matrix dimensions are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A quantum state failed its density-matrix checks.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Malformed JSON input.
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
