use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} does not belong to the group {group}")]
    WrongGroup { group: String, element: String },

    #[error("operands belong to different group contexts")]
    MixedContext,

    #[error("symbol {symbol} is not in an alphabet of size {size}")]
    BadSymbol { symbol: u32, size: usize },

    #[error("alphabets do not match: expected size {expected}, got {got}")]
    AlphabetMismatch { expected: usize, got: usize },

    #[error("pattern kind mismatch: {0}")]
    PatternKind(String),

    #[error("parse error at `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("resource limit exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("operation requires group {required}, got {got}")]
    UnsupportedGroup { required: &'static str, got: String },

    #[error("forbidden set is not in nearest-neighbor form: {0}")]
    NotNearestNeighbor(String),

    #[error("operation requires a finite forbidden set")]
    NotFinite,

    #[error("region too small: {0}")]
    RegionTooSmall(String),

    #[error("insufficient window radius: {0}")]
    InsufficientRadius(String),

    #[error("catalog entry missing: {0}")]
    MissingCatalogEntry(String),

    #[error("catalog index {0} out of range")]
    BadCatalogIndex(usize),

    #[error("no preimage window exists for catalog entry {entry} (catalog validation gap)")]
    PreimageFailure { entry: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
