use thiserror::Error;

/// Errors raised by parsing, order construction and revision.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("classes overlap on model {0}")]
    Overlap(String),
    #[error("model {0} is in no class")]
    Coverage(String),
    #[error("index of an empty set of models is undefined")]
    EmptySet,
    #[error("formula is inconsistent")]
    InconsistentFormula,
    #[error("conditional is unsatisfiable: premise is consistent but premise and conclusion are not")]
    UnsatisfiableConditional,
    #[error("orders are over different alphabets")]
    AlphabetMismatch,
    #[error("universe of {models} models exceeds the enumeration cap of {cap}")]
    UniverseTooLarge { models: usize, cap: usize },
    #[error("line {line}: {source}")]
    Script {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid JSON order: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax(pos: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            message: message.into(),
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            e @ Error::Script { .. } => e,
            e => Error::Script {
                line,
                source: Box::new(e),
            },
        }
    }
}
