use thiserror::Error;

/// Errors surfaced by the exact and geometric layers.
///
/// Construction code distinguishes dimension/shape problems (caller bugs)
/// from structural refusals (degenerate families, points that have no exact
/// rational representative) so the CLI can map them to distinct diagnostics.
#[derive(Debug, Error)]
pub enum FkmError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not a symmetric involution: {0}")]
    NotInvolution(String),

    #[error("representations act on different spaces or have different m")]
    MismatchedSummands,

    #[error("coefficient vector has wrong length or zero norm")]
    BadCoefficients,

    #[error("degenerate family: m2 = {m2} <= 0, the requested construction needs m2 > 0")]
    DegenerateSystem { m2: i64 },

    #[error("seed vector projects to zero, it lies in the opposite eigenspace")]
    ZeroProjection,

    #[error("index {index} out of range ({limit} available)")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("no exactly representable point found: {0}")]
    NotExactlyRepresentable(String),

    #[error("point is not on the focal manifold {0}")]
    NotFocal(&'static str),

    #[error("level must lie strictly between -1 and 1, got {0}")]
    LevelOutOfRange(f64),

    #[error("point is too close to a focal manifold for a stable spectrum (|f| = {0})")]
    NearFocal(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("joint eigenspace is zero for every sign pattern")]
    EmptyJointEigenspace,

    #[error("operators must be pairwise commuting symmetric involutions: {0}")]
    BadOperatorFamily(String),

    #[error("entry does not fit the serialized integer range")]
    SerializedEntryOverflow,

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FkmError>;
