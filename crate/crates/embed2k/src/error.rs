use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed complex: {0}")]
    Parse(String),

    #[error("face {0:?} has arity {1}, expected {2}")]
    FaceArity(Vec<usize>, usize, usize),

    #[error("face {0:?} contains a duplicate vertex")]
    DuplicateVertex(Vec<usize>),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid form specification: {0}")]
    InvalidForm(String),

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("no general position map found after {0} re-seed attempts")]
    GeneralPositionUnavailable(u32),

    #[error("hat cycle for face {face:?} has non-unit coefficient {coeff}")]
    NonUnitHat { face: Vec<usize>, coeff: String },

    #[error("cocycle is not super-symmetric at pair index {0}")]
    NotSuperSymmetric(usize),

    #[error("subset is not a 2k-cycle: face {face:?} and lower face {lower:?} see an odd count")]
    NotACycle { face: Vec<usize>, lower: Vec<usize> },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("matrix has rank {0}, expected rank 1")]
    RankNotOne(usize),

    #[error("diagonal entry {0} is not a perfect square")]
    NonSquareDiagonal(String),

    #[error("search size {0} exceeds the cap {1}")]
    SizeCapExceeded(String, String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
