use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate linear-fractional map (ad - bc vanishes)")]
    DegenerateMap,
    #[error("map is not a self-map of the unit disk: {0}")]
    NotSelfMap(String),
    #[error("the identity map has no isolated fixed points")]
    IdentityMap,
    #[error("no Denjoy-Wolff point: {0}")]
    NoDenjoyWolff(String),
    #[error("no finite angular derivative at the given point (|phi(zeta)| = {modulus})")]
    NoAngularDerivative { modulus: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("rational function has a pole at the origin")]
    PoleAtOrigin,
    #[error("series has zero constant term; real power undefined")]
    ZeroConstantTerm,
    #[error("branch violation: {0}")]
    BranchViolation(String),
    #[error("zero test indeterminate: a root lies within {distance:e} of the test circle")]
    Indeterminate { distance: f64 },
    #[error("evaluation hit a pole")]
    PoleEncountered,
    #[error("point lies outside the open unit disk (|w| = {modulus})")]
    OutsideDisk { modulus: f64 },
    #[error("coefficient vectors belong to different spaces or orders")]
    SpaceMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("requested order {requested} exceeds the cap {cap}")]
    OrderTooLarge { requested: usize, cap: usize },
    #[error("{method} did not converge after {iterations} iterations (last residual {residual:e})")]
    ConvergenceFailure {
        method: &'static str,
        iterations: usize,
        residual: f64,
    },
    #[error("truncation tail bound {tail:e} exceeds 10% of the computed norm {norm:e}; raise the order")]
    PrecisionLoss { tail: f64, norm: f64 },
    #[error("weight symbol is identically zero")]
    ZeroSymbol,
    #[error("point is not a fixed point of the map (|phi(p) - p| = {residual:e})")]
    NotAFixedPoint { residual: f64 },
    #[error("hypothesis mismatch: {0}")]
    HypothesisMismatch(String),
    #[error("unavailable: {0}")]
    Unavailable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
