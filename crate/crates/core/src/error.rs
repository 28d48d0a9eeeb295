use thiserror::Error;

/// Everything that can go wrong in the algebra and the evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("decorations from different alphabets cannot be mixed ({0} vs {1})")]
    AlphabetMismatch(&'static str, &'static str),
    #[error("operation requires the {expected} alphabet, got {found}")]
    UnsupportedAlphabet {
        expected: &'static str,
        found: &'static str,
    },
    #[error("a nonzero lambda needs decorations forming a semigroup (positive integers)")]
    SemigroupRequired,
    #[error("word {0} is not semiconvergent (must be empty or end with y)")]
    NotSemiconvergent(String),
    #[error("forest {0} is not in the image of the branched binarisation map")]
    NotInImage(String),
    #[error("{0} is not convergent")]
    NonConvergent(String),
    #[error("index {0} is divergent (first part must be at least 2)")]
    DivergentIndex(String),
    #[error("argument z = {0} is outside [0, 1)")]
    DomainError(f64),
    #[error("precision {precision:e} unreachable within {max_n} terms")]
    PrecisionUnreachable { precision: f64, max_n: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown identity suite '{0}'")]
    UnknownSuite(String),
    #[error("decoration {0} cannot be embedded into the target algebra")]
    Embedding(String),
}

pub type Result<T> = std::result::Result<T, Error>;
