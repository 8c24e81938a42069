//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong when building or running a network.
#[derive(Debug, Error)]
pub enum Error {
    #[error("activation domain requires lo < hi, got lo={lo}, hi={hi}")]
    InvalidDomain { lo: f64, hi: f64 },

    #[error("activation {value} at neuron {index} is outside the domain {{{lo}, {hi}}}")]
    InvalidActivation {
        index: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid neuron partition: {reason}")]
    InvalidPartition { reason: String },

    #[error("{what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("weight w[{to}][{from}] is nonzero but the edge {from} -> {to} is absent")]
    NonAdjacentWeight { from: usize, to: usize },

    #[error("weights are not symmetric at ({u}, {v})")]
    NotSymmetric { u: usize, v: usize },

    #[error("weight diagonal must be zero, found w[{u}][{u}] != 0")]
    NonzeroDiagonal { u: usize },

    #[error("network needs at least {min} neurons, got {n}")]
    TooFewNeurons { n: usize, min: usize },

    #[error("schedule order must be a permutation of 0..{n}")]
    NotAPermutation { n: usize },

    #[error("explicit schedule must be nonempty")]
    EmptySchedule,

    #[error("neuron index {u} out of range for {n} neurons")]
    NeuronOutOfRange { u: usize, n: usize },

    #[error("temperature must be a strictly positive finite real, got {t}")]
    InvalidTemperature { t: f64 },

    #[error("temperature ladder must be strictly decreasing and positive")]
    InvalidTemperatureLadder,

    #[error("no stable state found within {max_steps} single-neuron updates")]
    MaxStepsExceeded { max_steps: u64 },

    #[error(
        "cyclic convergence exceeded the n*2^n bound ({bound} updates for n={n}); \
         this indicates an implementation bug, not a user error"
    )]
    ConvergenceBoundViolation { n: usize, bound: u64 },

    #[error("chain produced no tallies: steps={steps} must exceed burn_in={burn_in}")]
    EmptyTally { steps: u64, burn_in: u64 },

    #[error("thinning stride must be >= 1")]
    ZeroThin,

    #[error("state space 2^{n} exceeds the size guard (max n = {max})")]
    StateSpaceTooLarge { n: usize, max: usize },

    #[error(
        "local field is zero at site {site}: the limit there is 1/2, not a deterministic value"
    )]
    TieSite { site: usize },

    #[error("matrix entry ({i}, {j}) = {value} is negative")]
    NegativeEntry { i: usize, j: usize, value: f64 },

    #[error("test vector must be non-negative and nonzero")]
    InvalidTestVector,

    #[error("power iteration did not close the bracket within {max_iter} iterations")]
    NoConvergence { max_iter: u64 },

    #[error("matrix is not irreducible")]
    NotIrreducible,

    #[error("matrix is not column-stochastic: column {column} sums to {sum}")]
    NotStochastic { column: usize, sum: f64 },

    #[error("stationary vector is not unique: kernel dimension {kernel_dim} != 1")]
    NotUnique { kernel_dim: usize },

    #[error("residual {residual} exceeds tolerance {tol}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    #[error("not a probability vector: {reason}")]
    InvalidProbabilityVector { reason: String },

    #[error("invalid tolerance {tol}: must be strictly positive")]
    InvalidTolerance { tol: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
