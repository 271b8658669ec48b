use thiserror::Error;

/// Errors raised by constructions, validators that reject input outright,
/// the move engine and the state sum.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("undefined composite: {f} ; {g}")]
    UndefinedComposite { f: String, g: String },
    #[error("not a group: {axiom} fails at {witness}")]
    NotAGroup { axiom: &'static str, witness: String },
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("invalid sector: {0}")]
    InvalidSector(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("base category is not gaunt: {0}")]
    NotGaunt(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("inadmissible coloring: {0}")]
    InadmissibleColoring(String),
    #[error("invalid stratification: {0}")]
    InvalidStratification(String),
    #[error("not flag-like: {0}")]
    NotFlagLike(String),
    #[error("not directable: {0}")]
    NotDirectable(String),
    #[error("delta-inconsistent triangle {0}")]
    DeltaInconsistent(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("inapplicable site: {0}")]
    InapplicableSite(String),
    #[error("move would break flag-likeness: {0}")]
    WouldBreakFlagLikeness(String),
    #[error("move would break directability: {0}")]
    WouldBreakDirectability(String),
    #[error("move {index} failed: {source}")]
    MoveFailed {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("no applicable move at step {step} after {attempts} attempts")]
    NoApplicableMove { step: usize, attempts: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
