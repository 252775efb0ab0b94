use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("symbol is not finite at frequency ({xi}, {eta})")]
    NonFiniteSymbol { xi: f64, eta: f64 },
    #[error("{pair} is not divergence-free (defect {defect:e})")]
    NotDivergenceFree { pair: &'static str, defect: f64 },
    #[error("field {field} is not Hermitian (defect {defect:e})")]
    NotReal { field: &'static str, defect: f64 },
    #[error("band cutoffs must satisfy 0 <= M < N (got M = {lo}, N = {hi})")]
    BadCutoffs { lo: f64, hi: f64 },
    #[error("time must be nonnegative (got {0})")]
    NegativeTime(f64),
    #[error("frequency ({xi}, {eta}) lies in {actual}, not {expected}")]
    RegionMismatch { xi: f64, eta: f64, expected: String, actual: String },
    #[error("sweep has no samples for region {0}")]
    EmptySweep(String),
    #[error("region {0} is not supported here (use D1 or D4)")]
    BadRegion(String),
    #[error("time step {dt} outside (0, {dt_max}]")]
    StepTooLarge { dt: f64, dt_max: f64 },
    #[error("state became non-finite at t = {0}")]
    NonFiniteState(f64),
    #[error("time {0} is not a recorded sample")]
    TimeNotSampled(f64),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("fit window holds {got} points, need at least {needed}")]
    WindowTooSmall { needed: usize, got: usize },
    #[error("series value {value} at t = {t} is not positive")]
    NonPositiveValue { t: f64, value: f64 },
    #[error("bad field dump: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
