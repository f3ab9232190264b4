use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("range inverted: lo = {lo} > hi = {hi}")]
    RangeInverted { lo: u64, hi: u64 },

    #[error("range must start at 1 or above, got lo = {0}")]
    ZeroLowerBound(u64),

    #[error("segment of {len} integers exceeds the budget of {budget}")]
    SegmentTooLarge { len: u64, budget: u64 },

    #[error("{n} lies outside the table range [{lo}, {hi}]")]
    OutOfRange { n: u64, lo: u64, hi: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shifts must be distinct integers; {0} appears more than once")]
    DuplicateShift(u64),

    #[error("compute budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("f({0}) = 0, the discrepancy scanner needs a function with values in {{-1, +1}}")]
    ZeroValue(u64),

    #[error("no value given for f({p}^{k}); multiplicative specs need explicit prime-power values")]
    MissingPrimePower { p: u64, k: u32 },

    #[error("|f({n})| = {value} exceeds 1")]
    UnboundedValue { n: u64, value: f64 },

    #[error("grid step {step} is coarser than 1/(4 log P) = {max}")]
    GridTooCoarse { step: f64, max: f64 },

    #[error("layers {0} and {1} overlap")]
    OverlappingLayers(usize, usize),

    #[error("malformed factor-table cache: {0}")]
    Cache(String),

    #[error("golden snapshot `{name}`: {detail}")]
    Golden { name: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors that come from bad caller input rather than a failure while running.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::RangeInverted { .. }
                | Error::ZeroLowerBound(_)
                | Error::InvalidParameter(_)
                | Error::DuplicateShift(_)
                | Error::GridTooCoarse { .. }
                | Error::OverlappingLayers(..)
        )
    }
}
