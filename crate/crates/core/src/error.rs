use thiserror::Error;

/// Every fallible operation in the crate reports through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{name}` has arity {arity} but was given {given} children")]
    ArityMismatch { name: String, arity: usize, given: usize },
    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("label `{0}` is reserved")]
    ReservedLabel(String),
    #[error("label `{0}` is not in the label set")]
    UnknownLabel(String),
    #[error("leaf index {index} out of range (tree has {leaves} leaves)")]
    LeafIndex { index: usize, leaves: usize },
    #[error("cannot prune: {0}")]
    Prune(String),
    #[error("tree `{0}` is not pointed")]
    NotPointed(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("operation needs a binary generator set")]
    NotBinary,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("computation budget of {budget_ms} ms exceeded")]
    Budget { budget_ms: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
