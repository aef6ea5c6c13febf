use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the zero polynomial has no weight")]
    ZeroHasNoWeight,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("square root needs constant term 1")]
    SqrtConstantTerm,
    #[error("inner series must have zero constant term")]
    NonZeroConstantTerm,
    #[error("reversion needs a series of the form x + O(x^2)")]
    NotRevertible,
    #[error("division is not exact: nonzero remainder at x^{power}")]
    InexactDivision { power: usize },
    #[error("divisor is zero through the truncation order")]
    ZeroDivisor,
    #[error("series is not antisymmetric under x <-> y")]
    NotAntisymmetric,
    #[error("division by (x - y) is not exact: nonzero remainder in total degree {degree}")]
    InexactDiagonalDivision { degree: usize },
    #[error("order {requested} exceeds available order {available}")]
    OrderTooHigh { requested: usize, available: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("R(t)^2 = {value:e} falls below the domain floor at t = {t}")]
    Domain { t: f64, value: f64 },
    #[error("quadrature did not converge within {evaluations} evaluations (error estimate {estimate:e})")]
    NoConvergence { evaluations: usize, estimate: f64 },
    #[error("tolerance {0:e} is below the supported minimum 1e-13")]
    ToleranceTooSmall(f64),
    #[error("|{name}| = {value} exceeds the radius guard {radius}")]
    RadiusGuard {
        name: &'static str,
        value: f64,
        radius: f64,
    },
    #[error("root finding did not converge")]
    RootNotBracketed,
    #[error("modulus k = {0} outside [0, 1)")]
    Modulus(f64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
