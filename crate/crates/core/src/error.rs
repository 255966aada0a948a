use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate is not finite: {0}")]
    NonFinite(f64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("rank {k} out of range for {len} items")]
    RankOutOfRange { k: usize, len: usize },
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("all points lie on one side of x = {0}")]
    AllOnOneSide(f64),
    #[error("empty input")]
    EmptyInput,
    #[error("instance too large for exhaustive search: n = {n}, max {max}")]
    TooLarge { n: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("adversary invariant violated: {0}")]
    Adversary(String),
    #[error("invalid experiment: {0}")]
    Experiment(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
