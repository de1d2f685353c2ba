//! Error type shared by all solvers and constructors.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("empty interval list")]
    EmptySet,
    #[error("malformed interval [{a}, {b}]")]
    MalformedInterval { a: f64, b: f64 },
    #[error("scale factor must be positive, got {0}")]
    BadScale(f64),
    #[error("Cantor ratio must lie in (0, 1/2), got {0}")]
    BadRatio(f64),
    #[error("density evaluator returned {value} at x = {x}")]
    BadDensity { x: f64, value: f64 },
    #[error("coincident nodes with positive weight: infinite Coulomb energy")]
    InfiniteEnergy,
    #[error("solver did not converge, residual {residual:.3e}")]
    SolveFailed { residual: f64 },
    #[error("interval unions are not nested at index {0}")]
    NotNested(usize),
    #[error("exchange stalled, best sup norm {best:e}")]
    ExchangeStall { best: f64 },
    #[error("measure has {got} distinct nodes, need at least {need}")]
    RankDeficient { need: usize, got: usize },
    #[error("Gamma_n = {gamma} persistently exceeds C(E) = {capacity}: E is not the essential support")]
    InconsistentSetClaim { gamma: f64, capacity: f64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("point {index} has modulus {modulus}, must lie strictly inside the unit disk")]
    BadSupport { index: usize, modulus: f64 },
    #[error("bad sampling law: {0}")]
    BadLaw(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
