use thiserror::Error;

/// Every failure the library can report. The CLI prints [`Error::name`] on
/// standard error, so variant names are part of the external surface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix modes differ (exact vs float)")]
    ModeMismatch,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid generator pair: {0}")]
    InvalidPair(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("representation is not unitary")]
    NotUnitary,
    #[error("commutator is not a scalar matrix")]
    NotScalar,
    #[error("generator indices {0} and {1} are adjacent or equal")]
    PairTooClose(usize, usize),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("projective representation has commutator obstruction -1")]
    Obstructed,
    #[error("sequence is not weakly convex")]
    NotConvex,
    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("operation requires exact-mode matrices")]
    NotExact,
    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("fusion axiom violated: {0}")]
    AxiomViolation(String),
    #[error("power iteration did not converge in {0} iterations")]
    NonConvergence(usize),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::ModeMismatch => "ModeMismatch",
            Error::SingularMatrix => "SingularMatrix",
            Error::StrandMismatch(..) => "StrandMismatch",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::InvalidPair(_) => "InvalidPair",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::NotUnitary => "NotUnitary",
            Error::NotScalar => "NotScalar",
            Error::PairTooClose(..) => "PairTooClose",
            Error::Inconsistent(_) => "Inconsistent",
            Error::Obstructed => "Obstructed",
            Error::NotConvex => "NotConvex",
            Error::CapExceeded(_) => "CapExceeded",
            Error::NotExact => "NotExact",
            Error::ParseError { .. } => "ParseError",
            Error::AxiomViolation(_) => "AxiomViolation",
            Error::NonConvergence(_) => "NonConvergence",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
