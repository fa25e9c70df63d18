use thiserror::Error;

use crate::algebra::Kind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed table dimensions, out-of-range indices and similar structural problems.
    #[error("input error: {0}")]
    Input(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("axiom `{axiom}` fails at ({})", .tuple.join(", "))]
    Axiom { axiom: String, tuple: Vec<String> },

    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),

    #[error("invalid parameter for `{name}`: {message}")]
    InvalidParameter { name: String, message: String },

    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: Kind, found: Kind },

    #[error("unsupported kind {0} for this operation")]
    UnsupportedKind(Kind),

    #[error("size mismatch: mapping has {found} entries, source has {expected} elements")]
    SizeMismatch { expected: usize, found: usize },

    #[error("maps are not composable: {0}")]
    NotComposable(String),

    #[error("section condition fails at `{element}`: f(s({element})) = {image}")]
    SectionFailure { element: String, image: String },

    #[error("letter from unknown component {0}")]
    UnknownComponent(usize),

    #[error("square does not commute: {0}")]
    NotCommuting(String),

    #[error("map is not surjective: {0}")]
    NotSurjective(String),

    #[error("enumeration guard exceeded: {0}")]
    Guard(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two procedures that must agree did not; always a bug here.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
