use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{what} has {size} elements but the limit is {limit} (search space ~{estimate}); raise the limit or pass --force")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
        estimate: String,
    },

    #[error("guess mentions epistemic literal #{index} but the domain only has {domain} literals")]
    GuessOutsideDomain { index: usize, domain: usize },

    #[error("a compatible guess needs a nonempty set of interpretations")]
    EmptyInterpretationSet,

    #[error("programs are not aligned: {0}; align them first")]
    NotAligned(&'static str),

    #[error("malformed program: {0}")]
    Malformed(String),

    #[error("qbf: {0}")]
    Qbf(String),

    #[error("the formula is false when every universal variable is set to true; the reduction's correctness argument does not apply (override with --allow-unchecked)")]
    AssumptionViolated,
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
