//! Truncated bivariate power series in `x, y`, truncated by total degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Coefficient, UniSeries};
use crate::error::SeriesError;
use crate::poly::{GradedPoly, Rational};

/// Which variable a univariate series is embedded as.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    X,
    Y,
}

/// `sum c_{ij} x^i y^j` over `i + j <= N`.
#[derive(Clone, PartialEq)]
pub struct BiSeries<C = GradedPoly> {
    order: usize,
    // Indexed by total degree d, then by the y-exponent j: d(d+1)/2 + j.
    coeffs: Vec<C>,
}

#[inline]
fn index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

fn len_for(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

/// All `(i, j)` with `i + j <= order`, by total degree then by `j`.
fn positions(order: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=order).flat_map(|d| (0..=d).map(move |j| (d - j, j)))
}

impl<C: Coefficient> BiSeries<C> {
    pub fn zero(order: usize) -> Self {
        BiSeries {
            order,
            coeffs: vec![C::zero(); len_for(order)],
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

    /// `c x^i y^j`, truncated at `order`.
    pub fn monomial(i: usize, j: usize, c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        if i + j <= order {
            s.coeffs[index(i, j)] = c;
        }
        s
    }

    pub fn x(order: usize) -> Self {
        Self::monomial(1, 0, C::one(), order)
    }

    pub fn y(order: usize) -> Self {
        Self::monomial(0, 1, C::one(), order)
    }

    /// Embeds a univariate series as a series in `x` or in `y`, keeping its
    /// order.
    pub fn from_uni(a: &UniSeries<C>, var: Variable) -> Self {
        let n = a.order();
        let mut s = Self::zero(n);
        for k in 0..=n {
            let idx = match var {
                Variable::X => index(k, 0),
                Variable::Y => index(0, k),
            };
            s.coeffs[idx] = a.coeff(k);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> C {
        if i + j > self.order {
            return C::zero();
        }
        self.coeffs[index(i, j)].clone()
    }

    pub fn coeff_ref(&self, i: usize, j: usize) -> &C {
        &self.coeffs[index(i, j)]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: C) {
        assert!(
            i + j <= self.order,
            "x^{i} y^{j} beyond order {}",
            self.order
        );
        self.coeffs[index(i, j)] = c;
    }

    /// `((i, j), c_{ij})` for every stored position, by total degree.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &C)> {
        positions(self.order).zip(self.coeffs.iter())
    }

    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.order {
            return Err(SeriesError::OrderTooHigh {
                requested: order,
                available: self.order,
            });
        }
        Ok(BiSeries {
            order,
            coeffs: self.coeffs[..len_for(order)].to_vec(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// First nonzero coefficient in (total degree, y-exponent) order.
    pub fn first_nonzero(&self) -> Option<((usize, usize), &C)> {
        self.iter().find(|(_, c)| !c.is_zero())
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> BiSeries<D> {
        BiSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Coefficient, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<BiSeries<D>, E> {
        Ok(BiSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    /// The transposition `(i, j) -> (j, i)`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.order);
        for ((i, j), c) in self.iter() {
            out.coeffs[index(j, i)] = c.clone();
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.iter()
            .all(|((i, j), c)| i >= j || *c == self.coeffs[index(j, i)])
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.iter()
            .all(|((i, j), c)| *c == self.coeffs[index(j, i)].negated())
    }

    /// Restriction to `y = 0`.
    pub fn at_y_zero(&self) -> UniSeries<C> {
        UniSeries::from_coeffs(
            (0..=self.order).map(|i| self.coeff(i, 0)).collect(),
            self.order,
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.order);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or(SeriesError::NotInvertible)?;
        let mut out = Self::zero(self.order);
        out.coeffs[0] = inv0.clone();
        let nonzero: Vec<((usize, usize), &C)> =
            self.iter().skip(1).filter(|(_, c)| !c.is_zero()).collect();
        for (i, j) in positions(self.order).skip(1) {
            let mut acc = C::zero();
            for &((a, b), c) in &nonzero {
                if a > i || b > j {
                    continue;
                }
                let v = &out.coeffs[index(i - a, j - b)];
                if !v.is_zero() {
                    acc.add_assign_ref(&c.times(v));
                }
            }
            out.coeffs[index(i, j)] = acc.times(&inv0).negated();
        }
        Ok(out)
    }

    /// Exact quotient by `x - y`; the result has order `N - 1`.
    ///
    /// Synthetic division in each homogeneous component: writing
    /// `n = (x - y) q`, the coefficient of `x^i y^{d-i}` in `n` equals
    /// `q_{i-1, d-i} - q_{i, d-1-i}`, which determines `q` from `i = 0`
    /// upward and leaves the `x^d` coefficient as the remainder check.
    pub fn div_x_minus_y(&self) -> Result<Self, SeriesError> {
        if self.order == 0 {
            return if self.coeffs[0].is_zero() {
                Ok(Self::zero(0))
            } else {
                Err(SeriesError::InexactDiagonalDivision { degree: 0 })
            };
        }
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::InexactDiagonalDivision { degree: 0 });
        }
        let mut q = Self::zero(self.order - 1);
        for d in 1..=self.order {
            // q_{0, d-1} = -n_{0, d}
            let mut prev = self.coeffs[index(0, d)].negated();
            q.coeffs[index(0, d - 1)] = prev.clone();
            for i in 1..d {
                let next = prev.minus(&self.coeffs[index(i, d - i)]);
                q.coeffs[index(i, d - 1 - i)] = next.clone();
                prev = next;
            }
            if prev != self.coeffs[index(d, 0)] {
                return Err(SeriesError::InexactDiagonalDivision { degree: d });
            }
        }
        Ok(q)
    }

    /// Quotient of two antisymmetric series, `den = (x - y) u` with `u(0, 0)`
    /// a unit. Both are divided by `x - y` exactly and the numerator is
    /// multiplied by `u^{-1}`. The result has order `min(N_num, N_den) - 1`.
    pub fn antisym_div(&self, den: &Self) -> Result<Self, SeriesError> {
        if !self.is_antisymmetric() || !den.is_antisymmetric() {
            return Err(SeriesError::NotAntisymmetric);
        }
        let num_q = self.div_x_minus_y()?;
        let u = den.div_x_minus_y()?;
        let n = num_q.order.min(u.order);
        let inv = u.truncate(n)?.inverse()?;
        Ok(&num_q.truncate(n)? * &inv)
    }

    /// `outer(self)`; `self` must vanish at the origin. The result has order
    /// `min(outer.order(), self.order())`.
    ///
    /// Horner with growing orders: after the step for `x^k` the accumulator
    /// is multiplied `k` more times by a series without constant term, so
    /// only its terms of degree `<= N - k` matter.
    pub fn compose_into(&self, outer: &UniSeries<C>) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonZeroConstantTerm);
        }
        let n = outer.order().min(self.order);
        let inner = self.truncate(n)?;
        let mut acc = Self::constant(outer.coeff(n), 0);
        for k in (0..n).rev() {
            acc = mul_upto(&acc, &inner, n - k);
            acc.coeffs[0].add_assign_ref(outer.coeff_ref(k));
        }
        Ok(acc)
    }

    /// `self(X(x, y), Y(x, y))` for series `X, Y` vanishing at the origin.
    pub fn compose_pair(&self, sx: &Self, sy: &Self) -> Result<Self, SeriesError> {
        if !sx.coeffs[0].is_zero() || !sy.coeffs[0].is_zero() {
            return Err(SeriesError::NonZeroConstantTerm);
        }
        let n = self.order.min(sx.order).min(sy.order);
        let sx = sx.truncate(n)?;
        let sy = sy.truncate(n)?;
        // Horner in X over rows that are polynomials in Y:
        // sum_i X^i (sum_j c_ij Y^j). Row i is only needed to degree n - i.
        let mut ypow = vec![Self::one(n)];
        for k in 1..=n {
            let next = &ypow[k - 1] * &sy;
            ypow.push(next);
        }
        let row = |i: usize| {
            let m = n - i;
            let mut r = Self::zero(m);
            for (j, yj) in ypow.iter().enumerate().take(m + 1) {
                let c = self.coeff_ref(i, j);
                if !c.is_zero() {
                    for (slot, v) in r.coeffs.iter_mut().zip(&yj.coeffs) {
                        if !v.is_zero() {
                            slot.add_assign_ref(&v.times(c));
                        }
                    }
                }
            }
            r
        };
        let mut acc = row(n);
        for i in (0..n).rev() {
            acc = &mul_upto(&acc, &sx, n - i) + &row(i);
        }
        Ok(acc)
    }

    /// Evaluates the truncated polynomial at a point, Horner in both
    /// variables.
    pub fn eval(&self, x: &C, y: &C) -> C {
        let mut acc = C::zero();
        for i in (0..=self.order).rev() {
            let mut row = C::zero();
            for j in (0..=(self.order - i)).rev() {
                row = row.times(y).plus(&self.coeffs[index(i, j)]);
            }
            acc = acc.times(x).plus(&row);
        }
        acc
    }
}

impl<C: Coefficient> Add for &BiSeries<C> {
    type Output = BiSeries<C>;
    fn add(self, rhs: Self) -> BiSeries<C> {
        let n = self.order.min(rhs.order);
        BiSeries {
            order: n,
            coeffs: (0..len_for(n))
                .map(|k| self.coeffs[k].plus(&rhs.coeffs[k]))
                .collect(),
        }
    }
}

impl<C: Coefficient> Sub for &BiSeries<C> {
    type Output = BiSeries<C>;
    fn sub(self, rhs: Self) -> BiSeries<C> {
        let n = self.order.min(rhs.order);
        BiSeries {
            order: n,
            coeffs: (0..len_for(n))
                .map(|k| self.coeffs[k].minus(&rhs.coeffs[k]))
                .collect(),
        }
    }
}

/// Product of the stored terms through total degree `order`, whatever the
/// orders of the factors. Callers guarantee that the missing terms cannot
/// contribute.
fn mul_upto<C: Coefficient>(a: &BiSeries<C>, b: &BiSeries<C>, order: usize) -> BiSeries<C> {
    let mut out = BiSeries::<C>::zero(order);
    let nonzero = |s: &'_ BiSeries<C>| -> Vec<((usize, usize), usize)> {
        positions(s.order.min(order))
            .enumerate()
            .filter(|(k, _)| !s.coeffs[*k].is_zero())
            .map(|(k, p)| (p, k))
            .collect()
    };
    let (lhs, rhs) = (nonzero(a), nonzero(b));
    for &((i1, j1), ka) in &lhs {
        for &((i2, j2), kb) in &rhs {
            // rhs is sorted by total degree
            if i1 + j1 + i2 + j2 > order {
                break;
            }
            out.coeffs[index(i1 + i2, j1 + j2)].add_assign_ref(&a.coeffs[ka].times(&b.coeffs[kb]));
        }
    }
    out
}

impl<C: Coefficient> Mul for &BiSeries<C> {
    type Output = BiSeries<C>;
    fn mul(self, rhs: Self) -> BiSeries<C> {
        mul_upto(self, rhs, self.order.min(rhs.order))
    }
}

impl<C: Coefficient> Neg for &BiSeries<C> {
    type Output = BiSeries<C>;
    fn neg(self) -> BiSeries<C> {
        self.map(C::negated)
    }
}

impl<C: Coefficient> fmt::Display for BiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j), c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*x^{i}*y^{j}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}

impl<C: Coefficient> fmt::Debug for BiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSeries[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type B = BiSeries<Rational>;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mono(i: usize, j: usize, c: i64, n: usize) -> B {
        B::monomial(i, j, r(c), n)
    }

    #[test]
    fn swap_and_products() {
        assert_eq!(mono(2, 1, 1, 4).swap(), mono(1, 2, 1, 4));
        let a = &mono(2, 1, 3, 5) + &mono(0, 4, -1, 5);
        assert_eq!(a.swap().swap(), a);
        let s = &B::x(4) + &B::y(4);
        let expected = &(&mono(2, 0, 1, 4) + &mono(1, 1, 2, 4)) + &mono(0, 2, 1, 4);
        assert_eq!(&s * &s, expected);
    }

    #[test]
    fn diagonal_division() {
        let n = 5;
        let x_minus_y = &B::x(n) - &B::y(n);
        let num = &mono(2, 0, 1, n) - &mono(0, 2, 1, n);
        assert_eq!(
            num.antisym_div(&x_minus_y).unwrap(),
            (&B::x(n) + &B::y(n)).truncate(4).unwrap()
        );
        let cube = &mono(3, 0, 1, n) - &mono(0, 3, 1, n);
        let expected = &(&mono(2, 0, 1, 4) + &mono(1, 1, 1, 4)) + &mono(0, 2, 1, 4);
        assert_eq!(cube.antisym_div(&x_minus_y).unwrap(), expected);
    }

    #[test]
    fn diagonal_division_with_linear_b() {
        // x B(y) - y B(x) with B = 1 + b1 t: the b1 terms cancel.
        let n = 4;
        let b = UniSeries::from_coeffs(vec![r(1), r(7)], n);
        let den = &(&B::x(n) * &B::from_uni(&b, Variable::Y))
            - &(&B::y(n) * &B::from_uni(&b, Variable::X));
        let q = den.antisym_div(&den).unwrap();
        assert_eq!(q, B::one(n - 1));
        assert_eq!(den.div_x_minus_y().unwrap(), B::one(n - 1));
    }

    #[test]
    fn division_errors() {
        let n = 4;
        let sym = &mono(2, 0, 1, n) + &mono(0, 2, 1, n);
        assert_eq!(sym.antisym_div(&sym), Err(SeriesError::NotAntisymmetric));
        // x^2 - xy is not divisible by x - y? it is: x(x - y). x^2 - y is not.
        let bad = &mono(2, 0, 1, n) - &mono(0, 1, 1, n);
        assert!(matches!(
            bad.div_x_minus_y(),
            Err(SeriesError::InexactDiagonalDivision { degree: 1 })
        ));
        let ok = &mono(2, 0, 1, n) - &mono(1, 1, 1, n);
        assert_eq!(ok.div_x_minus_y().unwrap(), B::x(n - 1));
    }

    #[test]
    fn composition_with_univariate() {
        let n = 5;
        let s = &B::x(n) + &B::y(n);
        assert_eq!(s.compose_into(&UniSeries::x(n)).unwrap(), s);
        let sq = UniSeries::monomial(2, r(1), n);
        assert_eq!(s.compose_into(&sq).unwrap(), &s * &s);
        let mu = UniSeries::from_coeffs(vec![r(0), r(1), r(3), r(-2)], n);
        assert_eq!(
            B::x(n).compose_into(&mu).unwrap(),
            B::from_uni(&mu, Variable::X)
        );
        assert_eq!(
            B::one(n).compose_into(&mu),
            Err(SeriesError::NonZeroConstantTerm)
        );
    }

    #[test]
    fn embedding() {
        let n = 4;
        let a = UniSeries::from_coeffs(vec![r(1), r(1)], n);
        assert_eq!(B::from_uni(&a, Variable::Y), &B::one(n) + &B::y(n));
        assert_eq!(
            B::from_uni(&a, Variable::X).swap(),
            B::from_uni(&a, Variable::Y)
        );
        let b = UniSeries::from_coeffs(vec![r(1), r(2), r(-3), r(5)], n);
        let prod = &B::from_uni(&b, Variable::X) * &B::from_uni(&b, Variable::Y);
        assert!(prod.is_symmetric());
    }

    #[test]
    fn inverse_and_pair_composition() {
        let n = 6;
        let u = &(&B::one(n) + &mono(1, 1, 3, n)) - &mono(0, 2, 2, n);
        assert_eq!(&u * &u.inverse().unwrap(), B::one(n));
        // (x + y) at (x^2, y) = x^2 + y
        let s = &B::x(n) + &B::y(n);
        let sx = mono(2, 0, 1, n);
        assert_eq!(s.compose_pair(&sx, &B::y(n)).unwrap(), &sx + &B::y(n));
        // xy at (x + y, x - y) = x^2 - y^2
        let xy = mono(1, 1, 1, n);
        let res = xy.compose_pair(&s, &(&B::x(n) - &B::y(n))).unwrap();
        assert_eq!(res, &mono(2, 0, 1, n) - &mono(0, 2, 1, n));
    }

    #[test]
    fn evaluation() {
        let n = 3;
        let s = &(&mono(1, 0, 1, n) + &mono(1, 1, 2, n)) + &mono(0, 3, 1, n);
        let f = s.map(|c| num_traits::ToPrimitive::to_f64(c).unwrap());
        assert_eq!(f.eval(&2.0, &3.0), 2.0 + 12.0 + 27.0);
    }
}
