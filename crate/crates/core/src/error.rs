use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Validation variants describe bad inputs; the remaining variants are
/// numerical failures that can usually be fixed by raising the precision.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("discriminant {0} is not negative")]
    NotNegative(i64),
    #[error("discriminant {0} is not congruent to 0 or 1 mod 4")]
    NotCongruent(i64),
    #[error("discriminant {0} is not fundamental")]
    NotFundamental(i64),
    #[error("discriminant {0} is outside the supported range |d| <= 2^53")]
    OutOfRange(i64),
    #[error("level N = {0} must be at least 2")]
    InvalidLevel(u64),
    #[error("discriminant {0} belongs to Q(sqrt(-1)) or Q(sqrt(-3)), which have extra units")]
    ExcludedField(i64),
    #[error("invalid quadratic point: {0}")]
    InvalidPoint(String),
    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),
    #[error("vector ({0}, {1}) is zero mod {2}")]
    ZeroVector(i64, i64, u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("matrix is not invertible mod {0}")]
    NotInvertible(u64),
    #[error("siegel product needs {needed} factors, above the cap of {cap}")]
    PrecisionUnachievable { needed: u64, cap: u64 },
    #[error("conjugate #{0} underflowed to zero at working precision")]
    DegenerateValue(usize),
    #[error(
        "coefficient of X^{degree} is not within {tolerance:e} of an integer \
         (rounding residual {rounding:e}, imaginary residual {imaginary:e}); \
         raise the precision, or the value is not an algebraic integer"
    )]
    SnapFailure {
        degree: usize,
        rounding: f64,
        imaginary: f64,
        tolerance: f64,
    },
    #[error("arithmetic failure: {0}")]
    Arithmetic(String),
}

impl Error {
    /// True for errors caused by invalid user input, as opposed to numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotNegative(_)
                | Error::NotCongruent(_)
                | Error::NotFundamental(_)
                | Error::OutOfRange(_)
                | Error::InvalidLevel(_)
                | Error::ExcludedField(_)
                | Error::InvalidPoint(_)
                | Error::InvalidForm(_)
                | Error::ZeroVector(..)
                | Error::ModulusMismatch(..)
                | Error::NotInvertible(_)
        )
    }
}
