use thiserror::Error;

/// Errors raised by the library. Variants map onto the CLI's exit codes:
/// input problems exit 2, everything else exits 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {symbol} is paired with both {first} and {second}; complement map is not an involution")]
    NotInvolution { symbol: u32, first: u32, second: u32 },
    #[error("symbol {symbol} has no complement partner")]
    IncompleteRelation { symbol: u32 },
    #[error("symbol {symbol} lies outside the complement relation's alphabet")]
    OutsideRelation { symbol: u32 },
    #[error("byte {byte:#04x} at offset {offset} is not in the {alphabet} alphabet")]
    InvalidByte { byte: u8, offset: usize, alphabet: &'static str },
    #[error("invalid input at line {line}, column {column}: {reason}")]
    Parse { line: usize, column: usize, reason: String },
    #[error("empty input")]
    EmptyInput,
    #[error("position {pos} out of range 1..={len}")]
    OutOfBounds { pos: usize, len: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("edit script was not requested for this scan")]
    ScriptNotRequested,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Whether the error stems from malformed input data rather than bad
    /// parameters.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidByte { .. } | Error::Parse { .. } | Error::EmptyInput | Error::OutsideRelation { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
