use thiserror::Error;

/// Errors raised by the workbench operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("axiom violation: {0}")]
    AxiomViolation(String),
    #[error("cap must be positive, got {0}")]
    CapExceeded(i64),
    #[error("size overflow: {what} needs {needed} entries, bound is {bound}")]
    SizeOverflow {
        what: String,
        needed: u128,
        bound: u128,
    },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("no limit: {0}")]
    NoLimit(String),
    #[error("no colimit: {0}")]
    NoColimit(String),
    #[error("no factorization: {0}")]
    NoFactorization(String),
    #[error("no union: {0}")]
    NoUnion(String),
    #[error("not Boolean: {0}")]
    NotBoolean(String),
    #[error("not lex: {0}")]
    NotLex(String),
    #[error("not regular: {0}")]
    NotRegular(String),
    #[error("not coherent: {0}")]
    NotCoherent(String),
    #[error("not a coherent model: {0}")]
    NotCoherentModel(String),
    #[error("not natural: {0}")]
    NotNatural(String),
    #[error("missing coproduct: {0}")]
    MissingCoproduct(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl CatError {
    pub(crate) fn overflow(what: impl Into<String>, needed: u128, bound: u128) -> Self {
        CatError::SizeOverflow {
            what: what.into(),
            needed,
            bound,
        }
    }
}

pub type Result<T, E = CatError> = std::result::Result<T, E>;
