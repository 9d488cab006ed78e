use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    Schema(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0:?} listed twice")]
    DuplicateVertex(String),
    #[error("edge ({0:?}, {1:?}) listed twice")]
    DuplicateEdge(String, String),
    #[error("edge ({0:?}, {1:?}) references an unknown vertex")]
    DanglingEdge(String, String),
    #[error("loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("not a median graph: {0}")]
    NotMedianGraph(String),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error("edge class {class} splits the graph into {components} pieces, expected 2")]
    NotTwoSided { class: usize, components: usize },
    #[error("unknown wall {0}")]
    UnknownWall(usize),
    #[error("wall {0} compared with itself")]
    SameWall(usize),
    #[error("empty vertex set")]
    EmptySet,
    #[error("vertex set is not convex: median of {0:?} leaves the set")]
    NotConvex([usize; 3]),
    #[error("walls {0} and {1} do not cross")]
    NotCrossing(usize, usize),
    #[error("contact graph definitions disagree on walls {0} and {1}")]
    DefinitionMismatch(usize, usize),
    #[error("facing {}-tuple found, exceeding the declared bound", .0.len())]
    FacingBoundViolated(Vec<usize>),
    #[error("grid embedding is not isometric on vertices {0} and {1}")]
    EmbeddingVerificationFailed(usize, usize),
    #[error("hierarchy path reduction failed: {0}")]
    HierarchyReduction(String),
    #[error("convex hull of the ball reaches distance {reached}, beyond the cap {cap}")]
    MedianClosureOverflow { reached: usize, cap: usize },
    #[error("window of radius {radius} too small: {detail}")]
    WindowTooSmall { radius: usize, detail: String },
    #[error("window exceeds the vertex budget of {0}")]
    WindowTooLarge(usize),
    #[error("automorphism check failed: {0}")]
    BadAutomorphism(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Schema(_) => "SCHEMA",
            Error::EmptyGraph => "EMPTY_GRAPH",
            Error::DuplicateVertex(_) => "DUPLICATE_VERTEX",
            Error::DuplicateEdge(..) => "DUPLICATE_EDGE",
            Error::DanglingEdge(..) => "DANGLING_EDGE",
            Error::SelfLoop(_) => "SELF_LOOP",
            Error::Disconnected { .. } => "DISCONNECTED",
            Error::UnknownVertex(_) | Error::VertexOutOfRange(_) => "UNKNOWN_VERTEX",
            Error::NotMedianGraph(_) => "NOT_MEDIAN_GRAPH",
            Error::BadParams(_) => "BAD_PARAMS",
            Error::NotTwoSided { .. } => "NOT_TWO_SIDED",
            Error::UnknownWall(_) => "UNKNOWN_WALL",
            Error::SameWall(_) => "SAME_WALL",
            Error::EmptySet => "EMPTY_SET",
            Error::NotConvex(_) => "NOT_CONVEX",
            Error::NotCrossing(..) => "NOT_CROSSING",
            Error::DefinitionMismatch(..) => "DEFINITION_MISMATCH",
            Error::FacingBoundViolated(_) => "FACING_BOUND_VIOLATED",
            Error::EmbeddingVerificationFailed(..) => "EMBEDDING_VERIFICATION_FAILED",
            Error::HierarchyReduction(_) => "HIERARCHY_REDUCTION",
            Error::MedianClosureOverflow { .. } => "MEDIAN_CLOSURE_OVERFLOW",
            Error::WindowTooSmall { .. } => "WINDOW_TOO_SMALL",
            Error::WindowTooLarge(_) => "WINDOW_TOO_LARGE",
            Error::BadAutomorphism(_) => "BAD_AUTOMORPHISM",
        }
    }
}
