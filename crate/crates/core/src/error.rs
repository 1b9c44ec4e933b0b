use thiserror::Error;

use crate::fan::FanViolation;

/// Errors surfaced by the library.
///
/// Everything except [`Error::Internal`] is an input problem; `Internal` means an
/// invariant the code relies on was observed to fail.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid fan: {}", format_violations(.0))]
    InvalidFan(Vec<FanViolation>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("length mismatch: expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("class mismatch: {0}")]
    ClassMismatch(String),

    #[error("weights are not a linear relation among the rays: sum phi_i u_i = {0:?}")]
    NotARelation([String; 2]),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn format_violations(v: &[FanViolation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
