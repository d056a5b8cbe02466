use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("degenerate chord {0}")]
    DegenerateChord(String),
    #[error("set is not invariant: {0}")]
    NotInvariant(String),
    #[error("map does not preserve cyclic order: {0}")]
    OrderNotPreserved(String),
    #[error("critical chord {0} is of caterpillar type")]
    CaterpillarInput(String),
    #[error("critical chord {0} is boundary degenerate")]
    BoundaryDegenerate(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("operation needs a periodic-type gap, got regular critical {0}")]
    RegularCriticalInput(String),
    #[error("not periodic: {0}")]
    NotPeriodic(String),
    #[error("not rotational: {0}")]
    NotRotational(String),
    #[error("orbits do not alternate: {0}")]
    NotAlternating(String),
    #[error("period mismatch: {0}")]
    PeriodMismatch(String),
    #[error("seed leaves are not forward invariant: {0}")]
    SeedNotForwardInvariant(String),
    #[error("Siegel gaps are not supported: {0}")]
    SiegelUnsupported(String),
    #[error("{0} is not in the base of the coded gap")]
    NotInBase(String),
    #[error("quadratic slice is not a cardioid member: {0}")]
    NotCardioidMember(String),
    #[error("slice does not coexist with the gap: {0}")]
    NotCoexisting(String),
    #[error("inconclusive at the given depth/period bound: {0}")]
    DepthInsufficient(String),
    #[error("no classification witness found: {0}")]
    NoWitnessFound(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
