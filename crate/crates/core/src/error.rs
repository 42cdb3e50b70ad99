use thiserror::Error;

/// Errors raised by the topology pipeline (parsing, presentations, homology, cup products).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: tetrahedron repeats vertex {vertex}")]
    RepeatedVertex { line: usize, vertex: usize },

    #[error("line {line}: tetrahedron {vertices:?} already listed")]
    DuplicateTetrahedron { line: usize, vertices: [usize; 4] },

    #[error("line {line}: vertex {vertex} is not below the declared count {count}")]
    VertexOutOfRange { line: usize, vertex: usize, count: usize },

    #[error("orientation inconsistent with complex: {0}")]
    OrientationInconsistent(String),

    #[error("malformed chain presentation: {0}")]
    Presentation(String),

    #[error("degree {0} outside 0..=3")]
    DegreeOutOfRange(usize),

    #[error("class does not belong to this group")]
    ForeignClass,

    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },

    #[error("cochain is not a cocycle")]
    NotCocycle,

    #[error("cup tensor does not descend to cohomology: {0}")]
    CupDescent(String),

    #[error("presentation carries no cup data")]
    NoCupData,

    #[error("unknown builtin manifold {0:?}")]
    UnknownBuiltin(String),

    #[error("invalid lens space parameters: {0}")]
    LensParameters(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
