use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `|A|·|B| ≠ K`, or one of the digit sets has fewer than two digits.
    Cardinality { base: u64, a: usize, b: usize },
    DigitRange { digit: u64, base: u64 },
    DuplicateDigit { digit: u64 },
    /// A level set or projection would exceed the configured element cap.
    Resource { requested: u128, cap: u128 },
    /// A point expected on the unit circle is not.
    Domain { modulus: f64 },
    /// A sampling step violates the Nyquist guard of the integrand.
    GridTooCoarse { step: f64, max_step: f64 },
    /// Hits of an approximate zero set that neither the lattice part nor the
    /// root part can absorb.
    NoCover { uncovered: usize, length: f64 },
    /// `|D|·|C| ≠ M` in a tiling check.
    Size { d: usize, c: usize, modulus: u64 },
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Cardinality { base, a, b } => write!(
                f,
                "cardinality error: |A|={a}, |B|={b}, K={base}; need |A|,|B| >= 2 and |A|*|B| = K"
            ),
            Error::DigitRange { digit, base } => {
                write!(f, "digit range error: digit {digit} not in [0, {}]", base - 1)
            }
            Error::DuplicateDigit { digit } => write!(f, "duplicate digit error: {digit}"),
            Error::Resource { requested, cap } => {
                write!(f, "resource error: {requested} elements requested, cap is {cap}")
            }
            Error::Domain { modulus } => {
                write!(f, "domain error: |z| = {modulus} is off the unit circle")
            }
            Error::GridTooCoarse { step, max_step } => {
                write!(f, "grid too coarse: step {step} exceeds {max_step}")
            }
            Error::NoCover { uncovered, length } => write!(
                f,
                "no cover: {uncovered} hit interval(s) of total length {length} left uncovered"
            ),
            Error::Size { d, c, modulus } => {
                write!(f, "size error: |D|*|C| = {d}*{c} != M = {modulus}")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
