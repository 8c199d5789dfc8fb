use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("band limit {0} is below 1 (the trivial representation has weight 1)")]
    BandLimitTooSmall(f64),

    #[error("malformed representation index: {0}")]
    MalformedIndex(String),

    #[error("group element out of range: {0}")]
    AngleOutOfRange(String),

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("resource cap exceeded: {needed} quadrature nodes requested, cap is {cap}")]
    ResourceCap { needed: u128, cap: usize },

    #[error("band-limit violation: {0}")]
    BandLimit(String),

    #[error("coefficient shape mismatch at {index}: expected {expected}x{expected}, got {rows}x{cols}")]
    ShapeMismatch {
        index: String,
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error ({rule}): {detail}")]
    Parse { rule: &'static str, detail: String },

    #[error("exponent relation violated: {0}")]
    ExponentRelation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("norm ratio undefined: source norm is zero")]
    ZeroNorm,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(rule: &'static str, detail: impl Into<String>) -> Self {
        Error::Parse {
            rule,
            detail: detail.into(),
        }
    }
}
