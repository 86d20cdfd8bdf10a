use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {0} has the same tail and head")]
    LoopEdge(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge id {0} appears more than once")]
    DuplicateEdgeId(String),
    #[error("base edge {0} is not an edge of the graph")]
    MissingBaseEdge(String),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("graph is not 2-edge-connected")]
    NotTwoEdgeConnected,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("no simple cycle passes through both {0} and {1}")]
    NoCommonCycle(String, String),
    #[error("arch contains the base edge")]
    BaseEdgeInArch,
    #[error("edge set is not an arch")]
    NotAnArch,
    #[error("more than {0} divisor classes; raise the enumeration bound")]
    EnumerationBoundExceeded(usize),
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: i64, found: i64 },
    #[error("cochain is not in the cycle space")]
    NotInCycleSpace,
    #[error("cochain does not determine an integral divisor class")]
    NonIntegralClass,
    #[error("orientation has bioriented edges")]
    BiorientedPresent,
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("orientation must be full (every edge oriented)")]
    NotFullOrientation,
    #[error("divisor degree {found} does not match {expected} for this unoriented set")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("divisor degree {found} exceeds genus - 1 = {max}")]
    DegreeTooHigh { max: i64, found: i64 },
    #[error("divisor is linearly equivalent to an effective divisor")]
    QIsEffective,
    #[error("edge map is not a bijection: {0}")]
    NotBijection(String),
    #[error("edge map does not send the base edge to the base edge")]
    BaseNotPreserved,
    #[error("edge map is not a cyclic bijection")]
    InvalidCyclicBijection,
    #[error("genus must be at least 2")]
    GenusTooSmall,
    #[error("morphism is rigid")]
    MorphismIsRigid,
    #[error("morphism is not rigid")]
    MorphismNotRigid,
    #[error("rigid morphism does not extend to a graph isomorphism through vertex classes")]
    NoIsomorphismLift,
    #[error("target of the first morphism is not the source of the second")]
    CompositionMismatch,
    #[error("objects belong to different graphs")]
    GraphMismatch,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
