//! Truncated univariate power series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Coefficient;
use crate::error::SeriesError;
use crate::poly::{GradedPoly, Rational};

/// A power series `c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})`.
///
/// The truncation order `N` is part of the value: binary operations truncate
/// to the smaller order of their inputs, and two series are equal only if
/// their orders agree.
#[derive(Clone, PartialEq)]
pub struct UniSeries<C = GradedPoly> {
    coeffs: Vec<C>,
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

impl<C: Coefficient> UniSeries<C> {
    pub fn zero(order: usize) -> Self {
        UniSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The series `x` (zero at order 0).
    pub fn x(order: usize) -> Self {
        Self::monomial(1, C::one(), order)
    }

    /// `c x^n`, truncated at `order`.
    pub fn monomial(n: usize, c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    /// Series with the given leading coefficients, padded with zeros or
    /// truncated to `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        UniSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^n`; zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: C) {
        self.coeffs[n] = c;
    }

    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::OrderTooHigh {
                requested: order,
                available: self.order(),
            });
        }
        Ok(UniSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> UniSeries<D> {
        UniSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Coefficient, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<UniSeries<D>, E> {
        Ok(UniSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, k: &C) -> Self {
        self.map(|c| c.times(k))
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in k..=n {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Exact division by `x^k`; the result has order `N - k`.
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order() {
            return Err(SeriesError::OrderTooHigh {
                requested: k,
                available: self.order(),
            });
        }
        if let Some(p) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::InexactDivision { power: p });
        }
        Ok(UniSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Termwise derivative; order drops by one.
    pub fn derive(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        UniSeries {
            coeffs: (1..=n)
                .map(|k| self.coeffs[k].scale(&rat(k as i64, 1)))
                .collect(),
        }
    }

    /// `x * d/dx`; unlike [`derive`](Self::derive) this keeps the order.
    pub fn x_derive(&self) -> Self {
        UniSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&rat(k as i64, 1)))
                .collect(),
        }
    }

    /// Multiplies by `x^k`; the order grows by `k`.
    pub fn mul_x_power(&self, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniSeries { coeffs }
    }

    /// Antiderivative with zero constant term; order grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&rat(1, k as i64 + 1)));
        }
        UniSeries { coeffs }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or(SeriesError::NotInvertible)?;
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc.add_assign_ref(&self.coeffs[k].times(&out[m - k]));
            }
            out.push(acc.times(&inv0).negated());
        }
        Ok(UniSeries { coeffs: out })
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::SqrtConstantTerm);
        }
        let half = rat(1, 2);
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(C::one());
        for m in 1..=n {
            // 2 b_m = a_m - sum_{k=1}^{m-1} b_k b_{m-k}
            let mut acc = self.coeffs[m].clone();
            for k in 1..m {
                acc = acc.minus(&out[k].times(&out[m - k]));
            }
            out.push(acc.scale(&half));
        }
        Ok(UniSeries { coeffs: out })
    }

    /// `self(inner(x))`; `inner` must vanish at 0. The result has order
    /// `min(self.order(), inner.order())`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonZeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        // After the step for x^k the accumulator is multiplied k more times
        // by `inner`, so it is only needed through order n - k.
        let mut acc = Self::constant(self.coeffs[n].clone(), 0);
        for k in (0..n).rev() {
            let m = n - k;
            let mut next = vec![C::zero(); m + 1];
            for (i, a) in acc.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in inner.coeffs[1..=m - i].iter().enumerate() {
                    if !b.is_zero() {
                        next[i + j + 1].add_assign_ref(&a.times(b));
                    }
                }
            }
            next[0].add_assign_ref(&self.coeffs[k]);
            acc = UniSeries { coeffs: next };
        }
        Ok(acc)
    }

    /// Compositional inverse of `x + a_2 x^2 + ...`.
    ///
    /// Solves `self(b(x)) = x` one coefficient at a time: the coefficient of
    /// `x^n` in `self(b)` is `b_n` plus terms in `b_1..b_{n-1}` only.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() || !self.coeffs[1].is_one() {
            return Err(SeriesError::NotRevertible);
        }
        let mut b: Vec<C> = vec![C::zero(); n + 1];
        b[1] = C::one();
        // pw[k][m] = coefficient of x^m in b^k, for 2 <= k <= m.
        let mut pw: Vec<Vec<C>> = vec![vec![C::zero(); n + 1]; n + 1];
        for m in 2..=n {
            let mut acc = C::zero();
            for k in 2..=m {
                // b^k = b * b^{k-1}; b^{k-1} starts at x^{k-1}.
                let mut c = C::zero();
                for j in 1..=(m - k + 1) {
                    let prev = if k == 2 { &b[m - j] } else { &pw[k - 1][m - j] };
                    if b[j].is_zero() || prev.is_zero() {
                        continue;
                    }
                    c.add_assign_ref(&b[j].times(prev));
                }
                if !self.coeffs[k].is_zero() {
                    acc.add_assign_ref(&self.coeffs[k].times(&c));
                }
                pw[k][m] = c;
            }
            b[m] = acc.negated();
        }
        Ok(UniSeries { coeffs: b })
    }

    /// Exact quotient `self / den`.
    ///
    /// Both series are divided by `x^v` where `v` is the valuation of `den`;
    /// the coefficients of `self` below `x^v` must vanish and the leading
    /// coefficient of `den` must be a unit. The result has order
    /// `min(N_num, N_den) - v`.
    pub fn exact_div(&self, den: &Self) -> Result<Self, SeriesError> {
        let v = den.valuation().ok_or(SeriesError::ZeroDivisor)?;
        let num = self.shift_down(v)?;
        let den = den.shift_down(v)?;
        let n = num.order().min(den.order());
        let inv = den.truncate(n)?.inverse()?;
        Ok(&num.truncate(n)? * &inv)
    }

    /// Horner evaluation at a point.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }
}

impl<C: Coefficient> Add for &UniSeries<C> {
    type Output = UniSeries<C>;
    fn add(self, rhs: Self) -> UniSeries<C> {
        let n = self.order().min(rhs.order());
        UniSeries {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].plus(&rhs.coeffs[k]))
                .collect(),
        }
    }
}

impl<C: Coefficient> Sub for &UniSeries<C> {
    type Output = UniSeries<C>;
    fn sub(self, rhs: Self) -> UniSeries<C> {
        let n = self.order().min(rhs.order());
        UniSeries {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].minus(&rhs.coeffs[k]))
                .collect(),
        }
    }
}

impl<C: Coefficient> Mul for &UniSeries<C> {
    type Output = UniSeries<C>;
    fn mul(self, rhs: Self) -> UniSeries<C> {
        let n = self.order().min(rhs.order());
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j].add_assign_ref(&a.times(b));
            }
        }
        UniSeries { coeffs: out }
    }
}

impl<C: Coefficient> Neg for &UniSeries<C> {
    type Output = UniSeries<C>;
    fn neg(self) -> UniSeries<C> {
        self.map(C::negated)
    }
}

impl<C: Coefficient> fmt::Display for UniSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl<C: Coefficient> fmt::Debug for UniSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniSeries[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::GradedPoly;

    type S = UniSeries<Rational>;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn s(cs: &[i64], order: usize) -> S {
        S::from_coeffs(cs.iter().map(|&c| r(c)).collect(), order)
    }

    fn p(i: usize) -> GradedPoly {
        GradedPoly::p(i)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&s(&[1, 1], 4) * &s(&[1, -1], 4), s(&[1, 0, -1], 4));
        assert!((&UniSeries::<Rational>::x(1) * &UniSeries::x(1)).is_zero());

        let a = UniSeries::from_coeffs(vec![GradedPoly::one(), p(1)], 3);
        let sq = &a * &a;
        let expected =
            UniSeries::from_coeffs(vec![GradedPoly::one(), p(1).scale(&r(2)), p(1).pow(2)], 3);
        assert_eq!(sq, expected);
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let a = s(&[1, 2, 3, 4], 5);
        let b = s(&[1, 1], 2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 2);
    }

    #[test]
    fn derivative_and_integral() {
        assert_eq!(s(&[0, 0, 1], 3).derive(), s(&[0, 2], 2));
        assert!(s(&[5], 3).derive().is_zero());
        let a = UniSeries::from_coeffs(vec![GradedPoly::one(), p(1).scale(&rat(1, 2))], 2);
        assert_eq!(a.derive().coeff(0), p(1).scale(&rat(1, 2)));

        assert_eq!(s(&[1], 2).integrate(), s(&[0, 1], 3));
        assert_eq!(s(&[0, 1], 2).integrate().coeff(2), rat(1, 2));
        let ia = a.integrate();
        assert_eq!(ia.coeff(1), GradedPoly::one());
        assert_eq!(ia.coeff(2), p(1).scale(&rat(1, 4)));
        assert_eq!(ia.order(), 3);
    }

    #[test]
    fn inverse() {
        assert_eq!(s(&[1, -1], 5).inverse().unwrap(), s(&[1, 1, 1, 1, 1, 1], 5));
        let a = UniSeries::from_coeffs(vec![GradedPoly::one(), p(1)], 4);
        let inv = a.inverse().unwrap();
        for k in 0..=4 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.coeff(k), p(1).pow(k as u32).scale(&r(sign)));
        }
        assert_eq!(s(&[0, 1], 3).inverse(), Err(SeriesError::NotInvertible));
        let nonunit = UniSeries::from_coeffs(vec![p(1)], 3);
        assert_eq!(nonunit.inverse(), Err(SeriesError::NotInvertible));
        // Invertible rational constant.
        let two = s(&[2, 1], 3);
        assert!((&two * &two.inverse().unwrap()).eq(&S::one(3)));
    }

    #[test]
    fn square_root() {
        assert_eq!(s(&[1, 2, 1], 4).sqrt().unwrap(), s(&[1, 1], 4));
        assert_eq!(S::one(3).sqrt().unwrap(), S::one(3));
        assert_eq!(s(&[4, 1], 3).sqrt(), Err(SeriesError::SqrtConstantTerm));
    }

    #[test]
    fn composition() {
        let x2 = s(&[0, 0, 1], 4);
        assert_eq!(s(&[1, 1], 4).compose(&x2).unwrap(), s(&[1, 0, 1], 4));
        let f = s(&[3, 1, 4, 1, 5], 4);
        assert_eq!(f.compose(&S::x(4)).unwrap(), f);
        // (x + x^2) o (x - x^2) = x - x^2 + x^2 - 2x^3 + x^4 = x - 2x^3 + x^4
        let lhs = s(&[0, 1, 1], 5).compose(&s(&[0, 1, -1], 5)).unwrap();
        assert_eq!(lhs, s(&[0, 1, 0, -2, 1], 5));
        assert_eq!(
            f.compose(&s(&[1, 1], 4)),
            Err(SeriesError::NonZeroConstantTerm)
        );
    }

    #[test]
    fn reversion() {
        assert_eq!(S::x(6).revert().unwrap(), S::x(6));
        // Catalan numbers.
        assert_eq!(
            s(&[0, 1, -1], 6).revert().unwrap(),
            s(&[0, 1, 1, 2, 5, 14, 42], 6)
        );
        assert_eq!(s(&[0, 2], 3).revert(), Err(SeriesError::NotRevertible));
        assert_eq!(s(&[1, 1], 3).revert(), Err(SeriesError::NotRevertible));
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            s(&[0, 0, 1, -1], 3).exact_div(&s(&[0, 0, 1], 3)).unwrap(),
            s(&[1, -1], 1)
        );
        assert_eq!(S::x(3).exact_div(&S::x(3)).unwrap(), S::one(2));
        let num = UniSeries::from_coeffs(vec![GradedPoly::zero(), GradedPoly::one(), p(1)], 4);
        let den = UniSeries::from_coeffs(vec![GradedPoly::one(), p(1)], 4);
        assert_eq!(num.exact_div(&den).unwrap(), UniSeries::x(4));
        assert_eq!(
            s(&[1, 1], 3).exact_div(&S::x(3)),
            Err(SeriesError::InexactDivision { power: 0 })
        );
        assert_eq!(
            S::x(3).exact_div(&S::zero(3)),
            Err(SeriesError::ZeroDivisor)
        );
        let nonunit = UniSeries::from_coeffs(vec![p(1)], 3);
        assert_eq!(den.exact_div(&nonunit), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn horner() {
        let f = UniSeries::<f64>::from_coeffs(vec![1.0, 2.0, 3.0], 2);
        assert_eq!(f.eval(&2.0), 17.0);
    }
}
