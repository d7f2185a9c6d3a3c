use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("inconsistent register layout: {0}")]
    Layout(String),

    #[error("dimension {dim} exceeds the limit of {limit}")]
    DimensionOverflow { dim: usize, limit: usize },

    #[error("operator is not Hermitian (asymmetry residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("operator is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: &'static str,
    },

    #[error("map is not a bijection on [{0}]")]
    NotBijective(usize),

    #[error("function table has an entry outside {{0,1}}")]
    NotBoolean,

    #[error("tuple {0:?} does not have pairwise distinct entries")]
    NonDistinct(Vec<usize>),

    #[error("input is not supported on the distinct subspace (weight {outside:e} outside)")]
    NotDistinctSupported { outside: f64 },

    #[error("ensemble '{0}' is not enumerable")]
    NotEnumerable(String),

    #[error("work estimate of {ops} scalar operations exceeds the budget of {limit}")]
    BudgetExceeded { ops: u128, limit: u128 },

    #[error(
        "Gram matrix of the permutation operators is singular for d = {d} < t = {t}; \
         row-restricted Young diagrams are not supported"
    )]
    GramSingular { d: usize, t: usize },

    #[error("a keyed permutation needs an even number of bits, got {0}")]
    OddDomain(u32),

    #[error("index set S must be nonempty")]
    EmptyIndexSet,

    #[error("unknown experiment '{0}'")]
    UnknownExperiment(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
