//! Coefficient specializations for the parameters `p1..p4`.
//!
//! Every construction takes a [`Params`] value holding the images of
//! `p1..p4` in the coefficient ring. The generic point keeps them as free
//! variables; the symbolic specializations map them to polynomials in an
//! auxiliary variable, so identities in `k^2`, `delta`, `epsilon` are checked
//! exactly.

use crate::poly::{GradedPoly, Rational, Var, NUM_PARAMS, NUM_VARS};
use crate::series::UniSeries;

/// Which point of parameter space a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    /// Free parameters `p1..p4`.
    Generic,
    /// `p = (0, -(1 + k^2), 0, k^2)`: the quartic under the root becomes
    /// `(1 - t^2)(1 - k^2 t^2)` and `SN` is the Jacobi sine.
    Euler,
    /// `p = (0, 2(1 + k^2), 0, (1 - k^2)^2)`: the point where the exponent
    /// of the Buchstaber law is the Jacobi sine.
    JacobiHoehn,
    /// `p = (0, delta, 0, eps)`.
    Ochanine,
    /// Concrete rational values.
    Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    p: [GradedPoly; NUM_PARAMS],
    kind: Specialization,
}

impl Params {
    pub fn generic() -> Self {
        Params {
            p: std::array::from_fn(|i| GradedPoly::p(i + 1)),
            kind: Specialization::Generic,
        }
    }

    pub fn euler() -> Self {
        let k2 = GradedPoly::var(Var::K2);
        let one = GradedPoly::one();
        Params {
            p: [GradedPoly::zero(), -&(&one + &k2), GradedPoly::zero(), k2],
            kind: Specialization::Euler,
        }
    }

    pub fn jacobi_hoehn() -> Self {
        let k2 = GradedPoly::var(Var::K2);
        let one = GradedPoly::one();
        let two = Rational::from_integer(2.into());
        let one_minus = &one - &k2;
        Params {
            p: [
                GradedPoly::zero(),
                (&one + &k2).scale(&two),
                GradedPoly::zero(),
                &one_minus * &one_minus,
            ],
            kind: Specialization::JacobiHoehn,
        }
    }

    pub fn ochanine() -> Self {
        Params {
            p: [
                GradedPoly::zero(),
                GradedPoly::var(Var::Delta),
                GradedPoly::zero(),
                GradedPoly::var(Var::Eps),
            ],
            kind: Specialization::Ochanine,
        }
    }

    pub fn rational(values: [Rational; NUM_PARAMS]) -> Self {
        Params {
            p: values.map(GradedPoly::constant),
            kind: Specialization::Rational,
        }
    }

    pub fn kind(&self) -> Specialization {
        self.kind
    }

    /// True when the coefficients are weighted-homogeneous polynomials in the
    /// free parameters, i.e. the grading checks apply.
    pub fn is_graded(&self) -> bool {
        self.kind == Specialization::Generic
    }

    /// Image of `p_i`, `i` in `1..=4`.
    pub fn p(&self, i: usize) -> &GradedPoly {
        &self.p[i - 1]
    }

    /// `1 + p1 t + p2 t^2 + p3 t^3 + p4 t^4`.
    pub fn quartic(&self, order: usize) -> UniSeries {
        let mut coeffs = vec![GradedPoly::one()];
        coeffs.extend(self.p.iter().cloned());
        UniSeries::from_coeffs(coeffs, order)
    }

    /// Maps a polynomial over the free parameters into this specialization.
    pub fn specialize(&self, poly: &GradedPoly) -> GradedPoly {
        let images: [GradedPoly; NUM_VARS] = std::array::from_fn(|i| {
            if i < NUM_PARAMS {
                self.p[i].clone()
            } else {
                GradedPoly::var(Var::ALL[i])
            }
        });
        poly.substitute(&images)
    }
}

impl Default for Params {
    fn default() -> Self {
        Params::generic()
    }
}
