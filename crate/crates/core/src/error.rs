use thiserror::Error;

/// Every failure the engine can classify.
///
/// Construction failures are values, never panics, so the fuzz harness and
/// the script interpreter can report them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate in input")]
    NonFiniteInput,
    #[error("degenerate circle: center and through-point coincide")]
    DegenerateCircle,
    #[error("circles do not intersect")]
    NoSuchIntersection,
    #[error("cannot pick from two coincident circles")]
    CoincidentCircles,
    #[error("invalid node id {0}")]
    InvalidNodeId(usize),
    #[error("invalid program: {0}")]
    InvalidProgram(String),
    #[error("expected {expected} seed points, got {found}")]
    SeedCountMismatch { expected: usize, found: usize },
    #[error("malformed trace: {0}")]
    MalformedTrace(String),
    #[error("scale factor {0} exceeds the supported maximum of 2^20")]
    ScaleOverflow(u64),
    #[error("point is not outside the circle")]
    NotExterior,
    #[error("inversion is undefined at the circle's center")]
    CenterInversion,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("circle center lies on the line; use the center-on-line construction")]
    CenterOnLine,
    #[error("point does not lie on the circle")]
    NotOnCircle,
    #[error("center must coincide with the circle's center")]
    CenterMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no usable auxiliary pole for the line-line construction")]
    NoPole,
}

pub type Result<T> = std::result::Result<T, Error>;
