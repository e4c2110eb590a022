use thiserror::Error;

use crate::forbidden::Witness;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad arguments: out-of-range vertex, parameter outside its domain, cap exceeded.
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A stated precondition does not hold on the supplied graph.
    #[error("precondition violated: {message}")]
    Precondition {
        message: String,
        /// Vertices responsible for the violation (e.g. those below a degree floor).
        offenders: Vec<usize>,
        /// A forbidden subgraph proving the violation, when one applies.
        witness: Option<Box<Witness>>,
    },

    /// A randomized step ran out of retries.
    #[error("retry budget exhausted after {attempts} attempts: {message}")]
    Budget { attempts: usize, message: String },

    /// A guarantee that should follow from the inputs failed; indicates a bug.
    #[error("internal invariant failed: {0}")]
    Invariant(String),

    #[error("numeric overflow: {0}")]
    Overflow(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>, offenders: Vec<usize>) -> Self {
        Error::Precondition {
            message: msg.into(),
            offenders,
            witness: None,
        }
    }

    pub(crate) fn forbidden_copy(msg: impl Into<String>, w: Witness) -> Self {
        Error::Precondition {
            message: msg.into(),
            offenders: w.vertices.clone(),
            witness: Some(Box::new(w)),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
