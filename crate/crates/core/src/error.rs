use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("ground set has {0} elements; at most {max} are supported", max = crate::bitset::MAX_ELEMENTS)]
    TooManyElements(usize),

    #[error("not a matroid: {0}")]
    NotAMatroid(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("unknown formula `{0}`")]
    UnknownFormula(String),

    #[error("bad parameters for `{name}`: {message}")]
    BadArity { name: String, message: String },

    /// Two independent constructions disagreed. Always a bug.
    #[error("internal consistency check failed: {0}")]
    Defect(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
