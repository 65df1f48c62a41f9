use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("empty input")]
    EmptyInput,
    #[error("root {root} out of range for {n} vertices")]
    InvalidRoot { root: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    #[error("target node represents no set")]
    EmptyTarget,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("protocol violation at node {node}: {msg}")]
    ProtocolViolation { node: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("brute force limited to {limit} vertices, tree has {n}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("level {n} would hold {size} vectors, above the cap of {cap}")]
    ResourceLimit { n: usize, size: usize, cap: usize },
    #[error("no provenance recorded for n = {0}")]
    ProvenanceMissing(usize),
    #[error("entry overflowed 128 bits at n = {0}")]
    Overflow(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("checksum mismatch: file declares {declared}, records hash to {actual}")]
    ChecksumMismatch { declared: String, actual: String },
    #[error("sign undecided at working precision")]
    PrecisionExhausted,
    #[error("no certificate for pair ({i}, {j})")]
    NoCertificate { i: usize, j: usize },
    #[error("no outcome after {0} iterations")]
    IterationLimit(usize),
}
