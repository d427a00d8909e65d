use thiserror::Error;

/// Errors raised by graph construction, partition handling, the ideal engine
/// and the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0},{1}}} has zero multiplicity")]
    ZeroMultiplicity(usize, usize),
    #[error("no multiplicity given for edge {{{0},{1}}}")]
    MissingEdge(usize, usize),
    #[error("unknown edge {{{0},{1}}}")]
    UnknownEdge(usize, usize),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("labels to merge must differ, got {0:?} twice")]
    SameLabel(String),
    #[error("not a bijection of 1..={0}")]
    NotAPermutation(usize),
    #[error("vertices {0} and {1} are adjacent and cannot be collapsed")]
    AdjacentCollapse(usize, usize),
    #[error("cannot collapse vertex {0} with itself")]
    SelfCollapse(usize),
    #[error("collapse merges edges into {{{0},{1}}} with total multiplicity zero")]
    ZeroMergedMultiplicity(usize, usize),
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("{0} vertices is too many to enumerate partitions")]
    TooManyVertices(usize),
    #[error("size mismatch: expected {expected} vertices, got {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("labeling is not defined on every label of the graph (missing {0:?})")]
    IncompleteLabeling(String),
    #[error("graph is not in the classical case")]
    NotClassical,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("zero binomial (both monomials equal)")]
    ZeroBinomial,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
