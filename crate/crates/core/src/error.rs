use thiserror::Error;

use crate::rewrite::TraceStep;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different generator tables")]
    TableMismatch,

    #[error("no image given for generator `{0}`")]
    MissingImage(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("invalid rewrite rule `{lhs}`: {msg}")]
    Rule { lhs: String, msg: String },

    #[error("unknown presentation `{0}`")]
    UnknownPresentation(String),

    #[error("reduction did not terminate within {steps} steps")]
    NonTermination {
        steps: usize,
        /// Most recent rewrite steps before the limit was hit.
        recent: Vec<TraceStep>,
    },

    #[error("coefficient of `{term}` has a pole at the limit point")]
    Pole { term: String },

    #[error("operator entry ({row}, {col}) is not homogeneous of the expected parity")]
    ParityInconsistent { row: usize, col: usize },

    #[error("{0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
