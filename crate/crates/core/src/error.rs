use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("spin system with {n} sites exceeds the configured maximum of {max}")]
    DimensionOverflow { n: usize, max: usize },

    #[error("temperature must be non-negative, got {0}")]
    NegativeTemperature(f64),

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("not entangled at T_lo = {t} (E_N = {value:e})")]
    NotEntangledAtLow { t: f64, value: f64 },

    #[error("still entangled at T_hi = {t} (E_N = {value:e})")]
    StillEntangledAtHigh { t: f64, value: f64 },

    #[error("no sign change of the negativity difference in [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
