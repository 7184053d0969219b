use thiserror::Error;

/// Errors raised by the algebra, geometry and document layers.
///
/// Invariant violations carry the name of the invariant in their message so
/// command-line users can tell which rule a document broke.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invariant `positive denominator` violated: rational `{0}` has zero denominator")]
    ZeroDenominator(String),
    #[error("malformed rational `{0}`: expected `p/q` with integer p and positive integer q")]
    MalformedRational(String),
    #[error("invariant `nonempty product` violated: a chain product needs at least one factor")]
    EmptyProduct,
    #[error("invariant `positive chain denominator` violated: chain denominator must be >= 1, got {0}")]
    ChainDenominator(i64),
    #[error("incompatible carriers: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },
    #[error("arity mismatch: algebra has {expected} coordinates, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invariant `value in carrier` violated: {value} is not in the chain with denominator {denominator} (coordinate {coordinate})")]
    NotInCarrier {
        coordinate: usize,
        value: String,
        denominator: u32,
    },
    #[error("coordinate {index} out of range for rank {rank}")]
    CoordinateOutOfRange { index: usize, rank: usize },
    #[error("value {0} lies outside the unit interval [0,1]")]
    OutsideUnitInterval(String),
    #[error("separating element needs two distinct spectrum points, got {0} twice")]
    SamePoint(usize),
    #[error("invariant `piecewise linear shape` violated: {0}")]
    BadBreakpoints(String),
    #[error("invariant `integer coefficients` violated: {0}")]
    NotMcNaughton(String),
    #[error("invariant `strong unit` violated: unit coordinates must be positive, got {0}")]
    BadUnit(i64),
    #[error("group element has a negative coordinate at {0}; good sequences need h >= 0")]
    NegativeElement(usize),
    #[error("group element {0} is outside the unit interval [0, u]")]
    OutsideGroupUnitInterval(String),
    #[error("document parse error at byte {offset}: {message}")]
    DocumentParse { offset: usize, message: String },
    #[error("invariant `document schema` violated: {0}")]
    Schema(String),
    #[error("term parse error at byte {offset}: {message}")]
    TermParse { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
