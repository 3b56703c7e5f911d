use thiserror::Error;

/// Malformed dart data: the input is not a graph at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("dart {0} is out of range")]
    DartOutOfRange(usize),
    #[error("dart {0} is paired with itself")]
    FixedPoint(usize),
    #[error("dart {0} appears in more than one edge")]
    DartReused(usize),
    #[error("dart {0} belongs to no edge")]
    Unpaired(usize),
    #[error("dart {0} belongs to more than one vertex")]
    VertexOverlap(usize),
    #[error("dart {0} belongs to no vertex")]
    VertexUncovered(usize),
    #[error("vertex {0} has no darts")]
    EmptyVertex(usize),
    #[error("leaf dart {0} listed twice")]
    LeafDartRepeated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// The requested surface admits no pant decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("surface (g={g}, n={n}) admits no pant decomposition")]
pub struct DomainError {
    pub g: u32,
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("edge {0} is a leaf edge")]
    LeafEdge(usize),
    #[error("edge {0} is a loop")]
    LoopEdge(usize),
    #[error("darts {0} and {1} do not sit on opposite ends of the move edge")]
    BadRecoupling(usize, usize),
    #[error("transposition ({0} {1}) is not a pair of distinct positions in 1..={2}")]
    BadTransposition(u32, u32, u32),
    #[error("no edge at ordering position {0}")]
    NoSuchPosition(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("leaf {0} is not present")]
    NoSuchLeaf(u32),
    #[error("contracting leaf {0} would leave a free circle")]
    FreeCircle(u32),
    #[error("graph has {0} leaves, gluing needs exactly 2")]
    WrongLeafCount(usize),
    #[error("image of {0} is not a vertex of the target complex")]
    MissingImage(String),
    #[error("edge {edge} collapses but its endpoints map to different vertices")]
    InconsistentCollapse { edge: usize },
    #[error("map needs g > 1, got g={0}")]
    GenusTooSmall(u32),
    #[error("expected a complex of type {expected}, got {found}")]
    WrongComplexType {
        expected: &'static str,
        found: &'static str,
    },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("vertex cap of {cap} exceeded")]
    VertexCap { cap: usize },
}
