//! Exact computer algebra for the Krichever-Hoehn / Buchstaber formal group
//! law over `Q[p1, p2, p3, p4]` and the addition theorem for the general
//! elliptic integral `int dt / sqrt(1 + p1 t + p2 t^2 + p3 t^3 + p4 t^4)`.
//!
//! * [`poly`]: graded polynomials with exact rational coefficients.
//! * [`series`]: truncated univariate and bivariate power series.
//! * [`buchstaber`]: the series `R, B, A, mu, nu, log_F, exp_F` and `F(x, y)`.
//! * [`elliptic`]: `log_G`, `SN`, and the formal group law `G` built from its
//!   logarithm and from the closed addition formula.
//! * [`numeric`]: quadrature of the elliptic integral and numeric checks.
//! * [`verify`]: the registry of exact identity checks.

pub mod buchstaber;
pub mod elliptic;
pub mod error;
pub mod json;
pub mod numeric;
pub mod params;
pub mod poly;
pub mod report;
pub mod series;
pub mod verify;

pub use buchstaber::CanonicalSeries;
pub use elliptic::AdditionLawBundle;
pub use error::{AlgebraError, NumericError, SeriesError};
pub use numeric::{ParamPoint, QuadResult, SeriesConfig};
pub use params::{Params, Specialization};
pub use poly::{Exponents, GradedPoly, Rational, Var, Weight};
pub use report::{FailingCoefficient, VerifyReport};
pub use series::{BiSeries, Coefficient, UniSeries, Variable};
