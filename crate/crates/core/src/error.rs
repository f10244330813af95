use std::path::PathBuf;

use crate::minkowski_cipher::KeyViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dual number {0} is not a unit")]
    NotAUnit(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("element {value} is out of range for a field of order {order}")]
    ElementOutOfRange { value: u64, order: u32 },

    #[error("two of the points lie on the same generator")]
    SharedGenerator,
    #[error("at most one distant point may be given")]
    TwoDistantPoints,
    #[error("two of the points are parallel")]
    ParallelPair,
    #[error("the points are collinear or degenerate")]
    Collinear,
    #[error("the two points are equal")]
    EqualPoints,
    #[error("line is not slanted")]
    NotSlanted,
    #[error("hyperbola parameter c must be nonzero")]
    DegenerateHyperbola,

    #[error("invalid cipher configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid message: {0}")]
    InvalidMessage(String),
    #[error("invalid key: {0}")]
    InvalidKey(KeyViolation),
    #[error("invalid key point: {0}")]
    InvalidKeyPoint(&'static str),
    #[error("no valid key found after {attempts} attempts")]
    Exhausted { attempts: u64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
