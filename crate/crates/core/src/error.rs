use thiserror::Error;

/// Errors raised by array construction, EII application and decomposition.
///
/// Every index carried by a variant is 1-based, matching how arrays and
/// steps are written in certificates and on the command line.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("array must have at least one component")]
    EmptyArray,

    #[error("component {index} is negative ({value})")]
    NegativeComponent { index: usize, value: f64 },

    #[error("component {index} is not finite ({value})")]
    NonFiniteComponent { index: usize, value: f64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("index {index} out of bounds for array of length {len}")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("transfer requires recipient {recipient} to precede donor {donor}")]
    TransferOrder { recipient: usize, donor: usize },

    #[error("transfer of {amount} exceeds component {donor} ({available})")]
    TransferExceedsSource {
        donor: usize,
        available: f64,
        amount: f64,
    },

    #[error("step amount must be positive, got {amount}")]
    NonPositiveAmount { amount: f64 },

    #[error("a sort step is not an elementary impact increase")]
    SortStepNotEii,

    #[error("source is not dominated by target: prefix sum {witness} is larger")]
    NotDominated { witness: usize },

    #[error("target is not non-increasing at position {index}")]
    TargetNotDecreasing { index: usize },

    #[error("source is not non-increasing at position {index}")]
    SourceNotDecreasing { index: usize },

    #[error("totals differ: {left} vs {right}")]
    SumsNotEqual { left: f64, right: f64 },

    #[error("an increase step was produced for equal-sum arrays at step {step}")]
    IncreaseInTransferMode { step: usize },

    #[error("array total is zero")]
    ZeroTotal,

    #[error("tolerance must be finite and non-negative, got {0}")]
    InvalidTolerance(f64),

    #[error("step {step}: {source}")]
    Replay {
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
