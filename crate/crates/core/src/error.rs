use thiserror::Error;

use crate::discord::Branch;

/// Errors for state construction, channel application and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension must be 2 or 4, got {0}")]
    UnsupportedDimension(usize),

    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("entry count {got} does not match dimension {dim}")]
    EntryCount { dim: usize, got: usize },

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("probability component {0} is negative beyond tolerance")]
    NegativeProbability(f64),

    #[error("probabilities sum to {0}, expected 1")]
    ProbabilitySum(f64),

    #[error("distributions have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("argument {0} lies outside [0, 1]")]
    OutOfDomain(f64),

    #[error("unphysical state: smallest eigenvalue {0:.3e}")]
    Unphysical(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("parametrized time {0} lies outside [0, 2]")]
    TimeOutOfRange(f64),

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("rate must be positive, got {0}")]
    NonPositiveRate(f64),

    #[error("random telegraph noise requires 2a > gamma, got a = {a}, gamma = {gamma}")]
    OverdampedRegime { a: f64, gamma: f64 },

    #[error("discord rate is unavailable for q > 1 - 1e-9 (got q = {0})")]
    RateUnavailable(f64),

    #[error("state does not satisfy a freezing condition")]
    NotFrozen,

    #[error("operation is not applicable on branch {0}")]
    BranchNotApplicable(Branch),

    #[error("no post-transition interval: the state stays frozen up to q = 1")]
    NoPostTransition,

    #[error("schedule does not oscillate; transition scanning needs a random-telegraph schedule")]
    NotOscillatory,

    #[error("invalid sampling parameters: {0}")]
    InvalidGrid(String),

    #[error("invalid state spec: {0}")]
    StateParse(String),

    #[error("invalid schedule spec: {0}")]
    ScheduleParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
