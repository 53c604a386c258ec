use thiserror::Error;

/// Errors raised across scoring, scanning, mining and data preparation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate symbol label `{0}`")]
    DuplicateSymbol(String),
    #[error("symbol `{label}` has probability {prob}; every probability must be > 0")]
    ZeroOrNegativeProbability { label: String, prob: f64 },
    #[error("probabilities sum to {sum}, expected 1 (tolerance 1e-9)")]
    ProbabilitySumMismatch { sum: f64 },
    #[error("alphabet needs at least 2 symbols, got {0}")]
    TooFewSymbols(usize),
    #[error("symbol and probability lists differ in length ({symbols} vs {probs})")]
    LengthMismatch { symbols: usize, probs: usize },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol index {index} out of range for alphabet of size {m}")]
    SymbolOutOfRange { index: usize, m: usize },
    #[error("empty substring has no chi-square value")]
    EmptySubstring,
    #[error("empty sequence")]
    EmptySequence,
    #[error("invalid range ({start}, {end}) for sequence of length {len}")]
    InvalidRange { start: usize, end: usize, len: usize },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("invalid generator parameters: {0}")]
    InvalidSpec(String),
    #[error("value {0} falls below the first quantization bin")]
    ValueOutOfRange(f64),
    #[error("invalid quantization scheme: {0}")]
    InvalidScheme(String),
    #[error("oracle requested on a sequence of length {len}, above the cap of {cap}")]
    OracleTooLarge { len: usize, cap: usize },
    #[error("oracle result is empty")]
    EmptyOracle,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
