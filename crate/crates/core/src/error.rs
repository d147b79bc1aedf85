//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("element is not in the span of the given basis")]
    NotInSpan,
    #[error("singular system: {0}")]
    Singular(String),
    #[error("matrix completion has no solution")]
    CompletionInconsistent,
    #[error("matrix completion is not unique ({0} free unknowns remain)")]
    CompletionUnderdetermined(usize),
    #[error("move precondition violated: {0}")]
    BadMove(String),
    #[error("unknown construction {0:?}")]
    UnknownConstruction(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("no canonical form implemented for family {0:?}")]
    NoNormalForm(String),
    #[error("no invariant defined for family {0:?}")]
    NoInvariant(String),
    #[error("holonomy iteration failed to stabilize")]
    HolonomyDiverged,
}
