use thiserror::Error;

/// Errors raised by the fibration calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("homology machinery needs boundary count 0 or 1, got F_{{{genus},{boundary}}}")]
    NoHomology { genus: u32, boundary: u32 },

    #[error("unsupported curve `{0}`: surgery needs a nonseparating curve")]
    UnsupportedCurve(String),

    #[error("curve `{name}`: separating flag disagrees with its homology class")]
    InconsistentCurve { name: String },

    #[error("letters live on different fibers")]
    MixedFibers,

    #[error("fiber mismatch: {0}")]
    FiberMismatch(String),

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unknown relation `{0}`")]
    UnknownRelation(String),

    #[error("fiber of genus {genus} is too small for the {relation} relation")]
    FiberTooSmall { relation: String, genus: u32 },

    #[error("structure twist requires an exceptional fiber (torus or annulus)")]
    NonExceptionalTwist,

    #[error("structure twist rank mismatch: expected {expected}, found {found}")]
    TwistRankMismatch { expected: usize, found: usize },

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("form is not symmetric")]
    NonSymmetric,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid fibration: {0}")]
    InvalidFibration(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("move changed an invariant: {0}")]
    InvariantViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
