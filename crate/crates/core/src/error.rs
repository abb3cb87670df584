use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("lookup table budget exceeded: m = {m}, budget allows m <= {budget}")]
    TableBudget { m: usize, budget: usize },

    #[error("decode radius {radius} exceeds guaranteed radius {guaranteed}")]
    RadiusExceedsGuarantee { radius: u32, guaranteed: u32 },

    #[error("no feasible construction: {0}")]
    Infeasible(String),

    #[error("inverse of zero is undefined")]
    ZeroInverse,

    #[error("duplicate interpolation point")]
    DuplicatePoint,

    #[error("instance generation failed: {0}")]
    GenerationFailed(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
