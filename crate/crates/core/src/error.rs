use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant failed: {0}")]
    Invariant(String),

    #[error("number-size bound exceeded: value has {value_bits} bits, limit has {limit_bits}")]
    BoundViolation { value_bits: u64, limit_bits: u64 },

    #[error("centering stalled after {updates} cycle updates (ceiling {ceiling})")]
    CenteringStalled { updates: u64, ceiling: u64 },

    #[error("convergence ceiling reached after {iterations} outer iterations (ceiling {ceiling})")]
    ConvergenceCeiling { iterations: u64, ceiling: u64 },

    #[error("contracted-arc positivity violated on auxiliary arc {arc}")]
    ContractedArcPositivity { arc: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}
