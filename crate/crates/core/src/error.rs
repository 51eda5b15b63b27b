use thiserror::Error;

/// Errors raised by the workbench.
///
/// Every construction here is an exact desk-scale simulation, so most
/// failures are guard rails: a cap on enumeration size or extension length
/// that keeps a computation finite.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scale guard: {what} = {value} exceeds cap {cap}")]
    ScaleGuard {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("extension did not terminate within {cap} bits")]
    ExtensionCap { cap: u64 },

    #[error("strategy did not terminate within {cap} bits (finite variants of the base language reach the avoided class)")]
    NonTermination { cap: u64 },

    #[error("block {block}: extension of length {len} does not fit into {capacity} bits")]
    ExtensionOverflow { block: u64, len: u64, capacity: u64 },

    #[error("player II returned an empty extension at move {move_index}")]
    PlayerIIStalled { move_index: u64 },

    #[error("malformed circuit: {0}")]
    MalformedCircuit(String),

    #[error("input has {got} bits, circuit expects {expected}")]
    InputLength { expected: usize, got: usize },

    #[error("majority vote over an empty circuit set")]
    EmptySet,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn guard(what: &'static str, value: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::ScaleGuard {
            what,
            value: value.into(),
            cap: cap.into(),
        }
    }
}
