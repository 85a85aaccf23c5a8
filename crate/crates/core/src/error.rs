use thiserror::Error;

use crate::partition::Partition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition size {0} exceeds the supported maximum {max}", max = crate::partition::MAX_SIZE)]
    TooLarge(usize),

    #[error("not a hook of this partition")]
    NotAHook,

    #[error("ν_2 undefined at 0")]
    Nu2Zero,

    #[error("the empty partition has no character degree")]
    EmptyDegree,

    #[error("not an e-core: {core} has a hook of length divisible by {e}")]
    NotACore { core: Partition, e: usize },

    #[error("e-quotient must have exactly {expected} components, got {got}")]
    QuotientArity { expected: usize, got: usize },

    #[error("k-data defined for k > 0")]
    KDataZero,

    #[error("inconsistent k-data table: {0}")]
    InconsistentKData(String),

    #[error("d-good is defined for odd partitions, got {0}")]
    DGoodNotOdd(Partition),

    #[error("⌊n/2^k⌋ = 0, ν_2 undefined (n = {n}, k = {k})")]
    DnkUndefined { n: usize, k: u32 },

    #[error("{0} is not an odd partition")]
    NotOdd(Partition),

    #[error("2^{k} exceeds |λ| = {size}")]
    HookTooLong { size: usize, k: u32 },

    #[error("expected |μ| = n - 2^k = {expected}, got |μ| = {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("requires 2^k < n (n = {n}, k = {k})")]
    RequiresStrict { n: usize, k: u32 },

    #[error("invalid commute instance (n = {n}, k = {k}, l = {l}): {reason}")]
    InvalidInstance {
        n: usize,
        k: u32,
        l: u32,
        reason: &'static str,
    },

    #[error("({n};{k},{l}) commutes, no counterexample exists")]
    CommutingInstance { n: usize, k: u32, l: u32 },

    #[error("not a subdiagram: {mu} is not contained in {lambda}")]
    NotSubdiagram { lambda: Partition, mu: Partition },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that signal a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
