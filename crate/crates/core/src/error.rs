//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least two vertices")]
    SingleVertex,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} has nonpositive weight")]
    NonpositiveWeight(usize, usize),
    #[error("vertex {0} has nonpositive measure")]
    NonpositiveMeasure(usize),
    #[error("custom mode requires a measure for vertex {0}")]
    MissingMeasure(usize),
    #[error("vertex measures are only accepted in custom mode")]
    UnexpectedMeasures,
    #[error("vertex ids must be dense: vertex {0} is missing but ids up to {1} appear")]
    NonDenseIds(usize, usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("vertex {0} has degree {1}, not a pending vertex")]
    NotPending(usize, usize),
    #[error("girth at vertex {0} is {1}, below 5")]
    GirthTooSmall(usize, u32),
    #[error("operation requires an unweighted graph with the {0} laplacian")]
    WrongMode(&'static str),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("bad enumeration config: {0}")]
    BadConfig(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
