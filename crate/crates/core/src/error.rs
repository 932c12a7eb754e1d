use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into input errors (malformed documents, bad indices) and
/// domain errors (an arrangement or local system the closed-form machinery
/// does not cover); see [`Error::is_input_error`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("row {row}: the triple 0 0 0 does not define a line")]
    ZeroTriple { row: usize },

    #[error("rows {first} and {second} define the same line")]
    DuplicateLine { first: usize, second: usize },

    #[error("row {row}: malformed number `{token}`")]
    MalformedNumber { row: usize, token: String },

    #[error("row {row}: expected 3 entries, found {found}")]
    WrongArity { row: usize, found: usize },

    #[error("row {row}: coefficients exceed the supported range after clearing denominators")]
    CoefficientOverflow { row: usize },

    #[error("an arrangement needs at least one line")]
    EmptyArrangement,

    #[error("index {index} out of range for {len} lines")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arrangement is not nodal, C1 or C2; closed-form enumeration is unavailable")]
    UnsupportedClass,

    #[error("line {infinity} at infinity is not compatible with any cover of the high points")]
    ChartMismatch { infinity: usize },

    #[error("residues must sum to zero")]
    SumNonzero,

    #[error("invalid local system: {0}")]
    InvalidLocalSystem(String),

    #[error("no admissible witness in the search box")]
    SearchExhausted,

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::UnsupportedClass | Error::SearchExhausted)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
