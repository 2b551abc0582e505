use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArgError {
    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("arity {0} exceeds the supported maximum")]
    ArityTooLarge(usize),
    #[error("truth table needs {expected} bits, got {got}")]
    BitsLength { expected: usize, got: usize },
    #[error("invalid bit character {0:?}")]
    BadBit(char),
    #[error("duplicate function name {0:?} in base")]
    DuplicateName(String),
    #[error("empty function name")]
    EmptyName,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResourceError {
    #[error("closure arity {0} too large (at most 4)")]
    ClosureArity(usize),
    #[error("expansion exceeds size cap {0}")]
    ExpansionCap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("target {0} is not in the clone generated by the base")]
    NotInClone(String),
    #[error("no implementation of {target} found up to depth {cap}")]
    CapTooSmall { target: String, cap: usize },
    #[error("target arity {0} too large for implementation search (at most 3)")]
    TargetArity(usize),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

/// A parse failure with a 1-based source location.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrError {
    #[error("circuit has a cycle through {0}")]
    Cycle(String),
    #[error("gate {gate}: arity mismatch, expected {expected} got {got}")]
    Arity { gate: String, expected: usize, got: usize },
    #[error("gate {gate}: modality index {index} outside 1..={k}")]
    ModalityIndex { gate: String, index: u32, k: u32 },
    #[error("gate {0} references itself or a later gate")]
    Order(String),
    #[error("unsupported operator for this transformation: {0}")]
    Vocabulary(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("precondition violated for engine {engine}: {reason}")]
    Precondition { engine: &'static str, reason: String },
    #[error("frame class {0} is not supported here")]
    UnsupportedFrame(String),
    #[error("base violation: {0}")]
    Base(String),
    #[error(transparent)]
    Ir(#[from] IrError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("no classification for frame class {0}")]
    UnsupportedClass(String),
    #[error("k must be at least 1 when modal operators are allowed")]
    MissingModalities,
    #[error("no case of the {0} classification applies")]
    Unclassified(String),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid witness JSON: {0}")]
    Json(String),
    #[error("world {0} listed twice")]
    DuplicateWorld(usize),
    #[error("world {0} is not listed in \"worlds\"")]
    UnknownWorld(usize),
    #[error("relation key {0:?} is not a positive integer")]
    RelationIndex(String),
}
