use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every operation in the crate.
///
/// Some variants are not bugs but findings: [`Error::NoDecomposition`] and
/// [`Error::NoWitness`] mean a searched-for object does not exist for that
/// input, and [`Error::NotFoundWithinBound`] means the search gave up without
/// deciding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the inputs does not hold.
    InvalidInput(&'static str),
    /// Checked 64-bit arithmetic would have wrapped.
    Overflow,
    /// A query needs sieve data above the configured ceiling.
    RangeTooLarge { hi: u64, limit: u64 },
    /// CRT merge of two classes whose moduli share a factor.
    NonCoprimeModuli { m1: u64, m2: u64 },
    /// Nothing found up to `bound`; this never asserts nonexistence.
    NotFoundWithinBound { bound: u64 },
    /// An even target with no distinct-prime decomposition of the requested kind.
    NoDecomposition { target: u64 },
    /// No coprime-difference witness exists for `n`.
    NoWitness { n: u64 },
    /// Too few class primes below `kn + l` for a witness to be possible.
    DegenerateInput { n: u64 },
    /// The permutation search would exceed its factorial width cap.
    WidthExceeded { phi: u64, width: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Overflow => f.write_str("64-bit arithmetic overflow"),
            Error::RangeTooLarge { hi, limit } => {
                write!(f, "range end {hi} exceeds sieve ceiling {limit}")
            }
            Error::NonCoprimeModuli { m1, m2 } => {
                write!(f, "moduli {m1} and {m2} are not coprime")
            }
            Error::NotFoundWithinBound { bound } => write!(f, "not found within bound {bound}"),
            Error::NoDecomposition { target } => {
                write!(f, "{target} has no decomposition into two distinct primes of the class")
            }
            Error::NoWitness { n } => write!(f, "no coprime-difference witness for n = {n}"),
            Error::DegenerateInput { n } => {
                write!(f, "fewer than two class primes below the value for n = {n}")
            }
            Error::WidthExceeded { phi, width } => {
                write!(f, "phi(n) = {phi} exceeds the permutation search width {width}")
            }
        }
    }
}

impl core::error::Error for Error {}
