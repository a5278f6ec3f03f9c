use thiserror::Error;

/// Errors raised by tensor construction and contraction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("alphabet mismatch between legs `{a}` and `{b}`")]
    AlphabetMismatch { a: String, b: String },
    #[error("index {index} out of range on leg `{leg}` (alphabet size {size})")]
    IndexOutOfRange { leg: String, index: u32, size: usize },
    #[error("index tuple has {got} entries, tensor rank is {rank}")]
    Arity { got: usize, rank: usize },
    #[error("sum of monomials with unequal exponents q^({a}/12) + q^({b}/12)")]
    MixedExponent { a: i64, b: i64 },
    #[error("zero amplitude cannot be stored")]
    ZeroEntry,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("label has {got} components, alphabet expects {expected}")]
    LabelWidth { got: usize, expected: usize },
    #[error("leg {leg} of node {node}: {problem}")]
    BadLeg { node: usize, leg: usize, problem: String },
    #[error("node {0} does not exist")]
    NoSuchNode(usize),
    #[error("physical assignment has {got} values, network has {expected} physical legs")]
    AssignmentArity { got: usize, expected: usize },
    #[error("open boundary leg {leg} of node {node} is not capped")]
    UncappedBoundary { node: usize, leg: usize },
    #[error("expected a scalar, got a rank-{0} tensor")]
    NotScalar(usize),
}
