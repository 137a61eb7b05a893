//! Library-wide error type. Every failure carries a stable machine-readable
//! kind (see [`Error::kind`]) so the CLI can emit structured errors.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("zero denominator at byte {position}")]
    ZeroDenominator { position: usize },

    #[error("denominator at byte {position} is divisible by the field characteristic")]
    NotRepresentable { position: usize },

    #[error("{0} is not usable as a coefficient-field modulus")]
    InvalidModulus(u64),

    #[error("operands declare different variable lists")]
    VariableMismatch,

    #[error("operands declare different coefficient fields")]
    FieldMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ideal is not zero-dimensional: {0}")]
    NotZeroDimensional(String),

    #[error("quotient is not a finite local algebra with residue field k: {0}")]
    NotLocalArtinian(String),

    #[error("equation is constant, so it cuts out no hypersurface")]
    ConstantEquation,

    #[error("singular locus is not isolated: the Tjurina algebra is infinite-dimensional")]
    NotIsolated,

    #[error("morphism is not surjective")]
    NotSurjective,

    #[error("extension is not small: its kernel is not killed by the maximal ideal")]
    NotSmall,

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("deformations disagree after pushforward to the shared base")]
    GluingMismatch,

    #[error("assignment value lies outside the maximal ideal")]
    AssignmentNotInMaximalIdeal,

    #[error("expected {expected} parameter assignments, got {got}")]
    ParameterCount { expected: usize, got: usize },

    #[error("minimal generator count did not stabilize below truncation cap {cap}")]
    NonStabilization { cap: u32 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("twist {0} exceeds the Cech truncation bound {1}")]
    TruncationOverflow(i64, i64),

    #[error("computation exceeds the configured size limit: {0}")]
    LimitExceeded(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable snake_case kind string for structured CLI errors.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::ZeroDenominator { .. } => "zero_denominator",
            Error::NotRepresentable { .. } => "not_representable",
            Error::InvalidModulus(_) => "invalid_modulus",
            Error::VariableMismatch => "variable_mismatch",
            Error::FieldMismatch => "field_mismatch",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NotZeroDimensional(_) => "not_zero_dimensional",
            Error::NotLocalArtinian(_) => "not_local_artinian",
            Error::ConstantEquation => "constant_equation",
            Error::NotIsolated => "not_isolated",
            Error::NotSurjective => "not_surjective",
            Error::NotSmall => "not_small",
            Error::AlgebraMismatch(_) => "algebra_mismatch",
            Error::GluingMismatch => "gluing_mismatch",
            Error::AssignmentNotInMaximalIdeal => "assignment_not_in_maximal_ideal",
            Error::ParameterCount { .. } => "parameter_count",
            Error::NonStabilization { .. } => "non_stabilization",
            Error::OutOfRange(_) => "out_of_range",
            Error::TruncationOverflow(..) => "truncation_overflow",
            Error::LimitExceeded(_) => "limit_exceeded",
            Error::Unsupported(_) => "unsupported",
        }
    }
}
