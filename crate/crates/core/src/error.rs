use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid network spec: {0}")]
    InvalidSpec(String),

    #[error("FiConn level {level} is not integral: t_{prev} = {t_prev} is not divisible by {divisor}", prev = level - 1)]
    NonIntegralFiConn { level: usize, t_prev: u64, divisor: u64 },

    #[error("size overflow at level {level}: server count exceeds 64 bits")]
    SizeOverflow { level: usize },

    #[error("label digit {position} = {digit} out of range (must be < {bound})")]
    DigitOutOfRange { position: usize, digit: u64, bound: u64 },

    #[error("label has {got} digits, expected {expected}")]
    LabelLength { got: usize, expected: usize },

    #[error("uid {uid} out of range (network has {servers} servers)")]
    UidOutOfRange { uid: u64, servers: u64 },

    #[error("level {level} out of range 1..={k}")]
    LevelOutOfRange { level: usize, k: usize },

    #[error("substructure index {index} out of range (must be < {bound})")]
    IndexOutOfRange { index: u64, bound: u64 },

    #[error("estimated topology size {estimated_bytes} bytes exceeds the capacity budget of {budget_bytes} bytes")]
    CapacityExceeded { estimated_bytes: u64, budget_bytes: u64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("level {level} unsupported by this proxy search (requires level >= {minimum})")]
    UnsupportedLevel { level: usize, minimum: usize },

    #[error("invalid count: {0}")]
    InvalidCount(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("malformed record: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by the network parameters themselves.
    pub fn is_spec_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidSpec(_) | Error::NonIntegralFiConn { .. } | Error::SizeOverflow { .. }
        )
    }
}
