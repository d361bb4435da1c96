use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown idempotent `{0}`")]
    UnknownIdempotent(String),
    #[error("no CK element at sink `{0}`")]
    Sink(String),
    #[error("bridge `{bridge}` starts at sink `{vertex}`")]
    BridgeAtSink { bridge: String, vertex: String },
    #[error("subset is not hereditary and saturated")]
    NotHereditarySaturated,
    #[error("subset enumeration needs {got} vertices, bound is {bound}")]
    BoundExceeded { got: usize, bound: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("entry at ({row}, {col}) leaves its corner r(p)Ar(q)")]
    CornerViolation { row: String, col: String },
    #[error("`{0}` is not a balloon vertex")]
    NotBalloon(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
