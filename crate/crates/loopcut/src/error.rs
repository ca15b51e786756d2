use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("determinant must be 1, got {0}")]
    Determinant(BigInt),
    #[error("elliptic element has no boundary fixed points")]
    EllipticInput,
    #[error("the identity has no isolated fixed points")]
    IdentityInput,
    #[error("element is not hyperbolic")]
    NotHyperbolic,
    #[error("comparison unresolved at the current refinement")]
    UnresolvedPrecision,
    #[error("point is not rational or infinity")]
    NotRational,
    #[error("element does not lie in the surface group")]
    NotInGroup,
    #[error("arc has {0} self-intersections, pair is not simple")]
    NotInDelta(u64),
    #[error("no group element found for {0}")]
    WitnessSearchExhausted(String),
    #[error("cutting sequence longer than {0}")]
    DepthExceeded(usize),
    #[error("point coincides with the base cusp")]
    SamePoint,
    #[error("rational point {point} did not terminate within {steps} steps")]
    StepBudgetExceeded { point: String, steps: usize },
    #[error("expansion has {have} steps, {want} requested")]
    TooFewSteps { have: usize, want: usize },
    #[error("images do not define an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("peripheral word is not preserved up to conjugacy")]
    PeripheralNotPreserved,
    #[error("interval did not shrink below {0} within the requested depth")]
    InsufficientDepth(String),
    #[error("no filling prefix within {0} steps")]
    NotFillingWithinDepth(usize),
    #[error("mapping class {0} moves U onto an overlapping translate")]
    DisjointnessFailure(String),
    #[error("inconsistent rotation system: {0}")]
    InconsistentRotation(String),
    #[error("line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("i/o failure: {0}")]
    Io(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
