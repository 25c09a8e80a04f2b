use alloc::string::String;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element has negative valuation")]
    NegativeValuation,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("denominator is divisible by the prime {0}")]
    DenominatorDivisibleByPrime(u64),
    #[error("operands live over different primes")]
    PrimeMismatch,
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("operation is undefined on the zero element")]
    ZeroElement,
    #[error("resource limit exceeded: {resource} > {limit}")]
    ResourceExceeded { resource: &'static str, limit: u64 },
    #[error("radical computation is not supported for this ideal")]
    UnsupportedRadical,
    #[error("slice at level {level} is zero (lattice not separated)")]
    DegenerateLattice { level: u32 },
    #[error("dimension mismatch: hilbert degree {hilbert:?}, krull dimension {krull:?}")]
    DimensionMismatch {
        hilbert: Option<usize>,
        krull: Option<usize>,
    },
    #[error("module is not holonomic at level {level}")]
    NotHolonomicAtSomeLevel { level: u32 },
    #[error("every scanned level is degenerate")]
    AllLevelsDegenerate,
    #[error("no stabilisation plateau detected in the scan window")]
    NoPlateau,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
