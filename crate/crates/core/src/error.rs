use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not regular: vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not vertex-transitive")]
    NotVertexTransitive,
    #[error("mapping is not a permutation of the vertex set")]
    NotAPermutation,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("multiplication table is not {0}x{0} with entries in range")]
    MalformedTable(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {element} out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("connection set contains the identity element")]
    IdentityInConnectionSet,
    #[error("connection set is not closed under inverses: {element} is present but {inverse} is not")]
    NotInverseClosed { element: usize, inverse: usize },
    #[error("connection set is not a proper subset of the group")]
    NotProper,
    #[error("group order {group} does not match graph order {graph}")]
    OrderMismatch { group: usize, graph: usize },
    #[error("group too large: {0} elements")]
    TooLarge(usize),
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error("invalid group parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("branch graph H' must be non-empty and connected")]
    DisconnectedBranchGraph,
    #[error("cycle C_{0} is undefined; cycle lengths must be at least 3")]
    CycleTooShort(usize),
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("expected p < q, got p = {0}, q = {1}")]
    NotIncreasing(usize, usize),
    #[error("prime {0} is below 3")]
    PrimeTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error("a Hamiltonian cycle needs at least 3 vertices, graph has {0}")]
    TooSmallForCycle(usize),
    #[error("endpoints must be distinct, got {0} twice")]
    SameEndpoints(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph order {0} is not prime")]
    NotPrimeOrder(usize),
    #[error("graph is not vertex-transitive")]
    NotVertexTransitive,
    #[error("connection set is empty; the circulant is edgeless")]
    EmptyConnection,
    #[error("valency must be at least 1")]
    ZeroValency,
    #[error("certificate invalid: {0}")]
    InvalidCertificate(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjectureError {
    #[error("graph order {0} is prime; decompositions need a composite order")]
    PrimeOrder(usize),
    #[error("graph order {0} is 0 or 1")]
    TrivialOrder(usize),
    #[error("graph is not vertex-transitive")]
    NotVertexTransitive,
    #[error("certificate fails clause `{0}`")]
    InvalidCertificate(String),
    #[error("quotient graph is not connected")]
    DisconnectedQuotient,
    #[error("composition failed: no choice of connector edges and endpoints yields a Hamiltonian path")]
    CompositionFailed,
    #[error("search exceeded its time budget")]
    Undecided,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hamilton(#[from] HamiltonError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for `{family}`: {message}")]
    InvalidParameters { family: String, message: String },
    #[error("catalog is limited to at most 16 vertices, got {0}")]
    TooLarge(usize),
    #[error("no catalog entry named `{0}`")]
    UnknownEntry(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
