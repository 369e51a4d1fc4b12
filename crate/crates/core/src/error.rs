use thiserror::Error;

/// Contract violations and invariant failures raised by the library.
///
/// Partial maps (`psi`, `phi`) never produce an error; an undefined value is
/// an ordinary `None`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} is outside 1..={max}", max = crate::subsets::MAX_N)]
    GroundSize(usize),

    #[error("element {element} is outside 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("position {position} is outside 0..={n}")]
    PositionOutOfRange { position: usize, n: usize },

    #[error("subsets live in different ground sets ([{left}] vs [{right}])")]
    GroundMismatch { left: usize, right: usize },

    #[error("subsets have different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("{sub} is not a subset of {sup}")]
    NotSubset { sub: String, sup: String },

    #[error("operation requires a non-empty subset")]
    EmptySubset,

    #[error(
        "(n, k) = ({n}, {k}) is outside the upper half max(1, floor(n/2)) <= k < n; \
         the construction is only claimed there"
    )]
    OutOfRange { n: usize, k: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
