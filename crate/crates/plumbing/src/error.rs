use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size must be at least 1")]
    ZeroSize,

    #[error("values {0:?} are not a permutation of 1..={1}")]
    NotBijection(Vec<usize>, usize),

    #[error("permutation size {0} is odd; the test needs [2n]")]
    OddSize(usize),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("letter {letter} out of range 1..={max}")]
    LetterOutOfRange { letter: usize, max: usize },

    #[error("cannot parse permutation {input:?}: {reason}")]
    PermParse { input: String, reason: String },

    #[error("cannot parse step path {input:?}: steps must be 'U' or 'D'")]
    PathParse { input: String },

    #[error("step path must be nonempty")]
    EmptyPath,

    #[error("step paths differ in length: {top} vs {bottom}")]
    PathLengthMismatch { top: usize, bottom: usize },

    #[error("step paths end at different elevations: {top} vs {bottom}")]
    EndpointMismatch { top: i64, bottom: i64 },

    #[error("top path dips below bottom path at abscissa {at}")]
    TopBelowBottom { at: usize },

    #[error("city has no cells")]
    EmptyCity,

    #[error("city cells are not edge-connected")]
    DisconnectedCity,

    #[error("bounds must satisfy 1 <= lo(i) <= hi(i) <= m at every position")]
    InvalidBounds,

    #[error("({a},{b}) is not a cell of the city")]
    NotACell { a: usize, b: usize },

    #[error("{sigma} is not below {tau} in Bruhat order: not realizable on this city")]
    NotRealizable { sigma: String, tau: String },

    #[error("interval ({a},{b}) violates 1 <= a <= b <= {n}")]
    InvalidInterval { a: usize, b: usize, n: usize },

    #[error("edge ({a},{b}) violates 1 <= a < b <= {n}")]
    InvalidEdge { a: usize, b: usize, n: usize },

    #[error("configuration city is not {expected}")]
    WrongCity { expected: String },

    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("cell order is not a flow order over the city cells")]
    BadCellOrder,

    #[error("render scale must be positive")]
    BadScale,
}

pub type Result<T> = std::result::Result<T, Error>;
