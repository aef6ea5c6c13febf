//! Coefficient rings for the truncated series types.

use std::fmt::{Debug, Display};

use num_traits::{One, Zero};

use crate::poly::{rational_to_f64, GradedPoly, Rational};

/// A commutative ring with unit that contains the rationals.
///
/// Exactness of zero tests matters: the division routines use `is_zero` to
/// certify that remainders vanish. For `f64` that test is a plain `== 0.0`.
pub trait Coefficient: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;

    /// Multiplicative inverse, if this element is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn scale(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }
}

impl Coefficient for GradedPoly {
    fn zero() -> Self {
        GradedPoly::zero()
    }
    fn one() -> Self {
        GradedPoly::one()
    }
    fn is_zero(&self) -> bool {
        GradedPoly::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        GradedPoly::constant(r.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn unit_inverse(&self) -> Option<Self> {
        // Units of a polynomial ring over a field are the nonzero constants.
        let c = self.as_constant()?;
        (!Zero::is_zero(&c)).then(|| GradedPoly::constant(c.recip()))
    }
    fn is_one(&self) -> bool {
        GradedPoly::is_one(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        GradedPoly::scale(self, r)
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Coefficient for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
}
