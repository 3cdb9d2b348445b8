use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed JSON or a field of the wrong shape. `field` is the path of
    /// the offending field (for example `buffer` or `jobs[2].origin`).
    #[error("parse error at `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("invalid path cover: {0}")]
    InvalidCover(String),

    /// The solver does not apply to this input (wrong buffer, cyclic
    /// digraph, parameter above its limit, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{solver}: n = {n} exceeds the cap of {cap}")]
    TooLarge {
        solver: &'static str,
        n: usize,
        cap: usize,
    },
}

impl Error {
    /// True for errors meaning "this solver is not applicable here" rather
    /// than "the input is broken".
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Precondition(_) | Error::TooLarge { .. })
    }
}
