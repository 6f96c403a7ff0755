use thiserror::Error;

/// Errors surfaced by group arithmetic, the KEM schemes, the directory, and
/// serialization. Decapsulation for a non-member is *not* an error: it is the
/// `None` ("bottom") outcome of `decaps`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("prime width {0} cannot supply three distinct odd primes")]
    InvalidBits(u32),

    #[error("parameter search exhausted: {0}")]
    SearchExhausted(String),

    #[error("operands belong to different backends or parameter sets")]
    BackendMismatch,

    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),

    #[error("element is not in the order-N subgroup")]
    NotInSubgroup,

    #[error("index {index} out of range [1, {max}]")]
    IndexOutOfRange { index: u32, max: u32 },

    #[error("recipient set is empty")]
    EmptySet,

    #[error("no public key supplied for index {0}")]
    MissingUpk(u32),

    #[error("public key for index {0} failed validation")]
    InvalidUpk(u32),

    #[error("malformed public key: {0}")]
    MalformedUpk(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {0} is already registered")]
    DuplicateIndex(u32),

    #[error("strict mode rejects invalid key for index {0}")]
    StrictModeInvalid(u32),

    #[error("index {0} is not registered")]
    MissingIndex(u32),

    #[error("key for index {0} was stored unvalidated")]
    UnvalidatedKey(u32),

    #[error("directory file already exists: {0}")]
    AlreadyExists(String),

    #[error("directory is bound to different public parameters: {0}")]
    BindingError(String),

    #[error("inputs are not distinct")]
    NonDistinctInputs,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
