use thiserror::Error;

/// Errors shared across the engine.
///
/// Structural verdicts (an axiom failing, a fingerprint mismatch) are not
/// errors; they are reported as results. `Error` covers genuinely broken
/// inputs and exhausted budgets.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("bad qubit position: {0}")]
    BadPosition(String),

    #[error("matrix does not normalize the Pauli group")]
    NotInPauliGroup,

    #[error("closure budget exceeded: {found} elements found, limit {limit}")]
    BudgetExceeded { found: usize, limit: usize },

    #[error("generator at ordinal {0} is not an involution")]
    NotInvolution(u32),

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("elements do not form a subgroup of the ambient group")]
    NotASubgroup,

    #[error("matrix violates the symplectic form")]
    FormViolation,

    #[error("rank {0} exceeds the supported bound {1}")]
    RankTooLarge(usize, usize),

    #[error("unknown claim id: {0}")]
    UnknownClaim(String),

    #[error("unknown pair configuration: {0}")]
    UnknownPair(String),

    #[error("corrupt cache file: {0}")]
    CorruptCache(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
