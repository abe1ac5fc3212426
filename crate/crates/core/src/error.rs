//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A polynomial operation required a homogeneous input.
    NotHomogeneous,
    /// Truncation degree below the faithfulness margin for A(n).
    TruncationTooSmall { n: u32, given: i32, required: i32 },
    /// The generated operator span did not reach the expected dimension.
    DimensionMismatch { expected: usize, found: usize },
    /// Only A(0), A(1), A(2) are supported.
    UnsupportedSubalgebra(u32),
    /// Module construction left the intended monomial basis.
    ClosureFailure { monomial: String, generator: u8 },
    /// Operation on modules with incompatible certified subalgebras.
    MixedAlgebraTags,
    /// Operation required the other variance (homology vs cohomology side).
    WrongVariance,
    /// A requested chart window is not certified by the available degree bound.
    WindowTooSmall { required_bound: i32, given: i32 },
    /// A map failed a linearity or bijectivity certificate.
    NotLinear { generator: u8, degree: i32, row: usize },
    NotBijective { degree: i32 },
    /// Weight-component request on a ring with no weight splitting.
    NoWeightSplitting(String),
    /// Unknown construction name passed to the build layer.
    UnknownConstruction(String),
    /// Malformed serialized data.
    Parse(String),
    /// Anything else that indicates an internal inconsistency.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            Error::TruncationTooSmall { n, given, required } => write!(
                f,
                "truncation degree {given} is below the faithfulness margin {required} for A({n})"
            ),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "operator span has dimension {found}, expected {expected}")
            }
            Error::UnsupportedSubalgebra(n) => write!(f, "A({n}) is not supported (n must be 0, 1 or 2)"),
            Error::ClosureFailure { monomial, generator } => write!(
                f,
                "action of Sq^{generator} leaves the monomial basis at {monomial}"
            ),
            Error::MixedAlgebraTags => write!(f, "modules carry different certified subalgebras"),
            Error::WrongVariance => write!(f, "operation requires the dual (cohomology) side"),
            Error::WindowTooSmall { required_bound, given } => write!(
                f,
                "window not certified: need degree bound at least {required_bound}, have {given}"
            ),
            Error::NotLinear { generator, degree, row } => write!(
                f,
                "map does not commute with Sq^{generator} at degree {degree}, basis element {row}"
            ),
            Error::NotBijective { degree } => write!(f, "map is not bijective at degree {degree}"),
            Error::NoWeightSplitting(r) => {
                write!(f, "{r} carries a weight filtration but no weight splitting")
            }
            Error::UnknownConstruction(s) => write!(f, "unknown construction `{s}`"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::Internal(s) => write!(f, "internal error: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
