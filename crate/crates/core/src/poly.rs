//! Graded polynomials in the four parameters `p1..p4` with exact rational
//! coefficients.
//!
//! `p1, p2, p3, p4` carry weights 2, 4, 6, 8. Three auxiliary variables
//! (`k2`, `delta`, `eps`) exist for the symbolic specializations; they carry
//! weight 0 and are ignored by [`GradedPoly::weight`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;
use crate::numeric::ParamPoint;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Number of polynomial variables: `p1..p4` plus three auxiliaries.
pub const NUM_VARS: usize = 7;

/// Number of weighted parameters `p1..p4`.
pub const NUM_PARAMS: usize = 4;

const VAR_NAMES: [&str; NUM_VARS] = ["p1", "p2", "p3", "p4", "k2", "delta", "eps"];
const VAR_WEIGHTS: [u32; NUM_VARS] = [2, 4, 6, 8, 0, 0, 0];

/// A polynomial variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    P1,
    P2,
    P3,
    P4,
    /// Square of the Jacobi modulus.
    K2,
    /// Ochanine parameter `delta`.
    Delta,
    /// Ochanine parameter `epsilon`.
    Eps,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [
        Var::P1,
        Var::P2,
        Var::P3,
        Var::P4,
        Var::K2,
        Var::Delta,
        Var::Eps,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        VAR_NAMES[self.index()]
    }

    /// The parameter `p_i` for `i` in `1..=4`.
    pub fn param(i: usize) -> Var {
        assert!((1..=NUM_PARAMS).contains(&i), "no parameter p{i}");
        Var::ALL[i - 1]
    }
}

/// Exponents of a monomial, indexed by [`Var`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponents(pub [u32; NUM_VARS]);

impl Exponents {
    pub fn new(e: [u32; NUM_VARS]) -> Self {
        Exponents(e)
    }

    /// Exponent vector over `p1..p4` only.
    pub fn params(e: [u32; NUM_PARAMS]) -> Self {
        let mut full = [0; NUM_VARS];
        full[..NUM_PARAMS].copy_from_slice(&e);
        Exponents(full)
    }

    /// Weighted degree `2e1 + 4e2 + 6e3 + 8e4`.
    pub fn weight(&self) -> u32 {
        self.0.iter().zip(VAR_WEIGHTS).map(|(e, w)| e * w).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// True if only `p1..p4` occur.
    pub fn is_param_only(&self) -> bool {
        self.0[NUM_PARAMS..].iter().all(|&e| e == 0)
    }

    fn add(&self, other: &Exponents) -> Exponents {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0) {
            *o += e;
        }
        Exponents(out)
    }
}

/// Result of [`GradedPoly::weight`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(u32),
    Inhomogeneous,
}

/// A polynomial in `p1..p4` (and the auxiliary variables) over the
/// rationals. Terms with zero coefficients are never stored, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly::default()
    }

    pub fn one() -> Self {
        GradedPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        GradedPoly::monomial(Exponents::default(), c)
    }

    pub fn from_int(n: i64) -> Self {
        GradedPoly::constant(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a constant polynomial.
    pub fn ratio(num: i64, den: i64) -> Self {
        GradedPoly::constant(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NUM_VARS];
        e[v.index()] = 1;
        GradedPoly::monomial(Exponents(e), Rational::one())
    }

    /// The parameter `p_i`, `i` in `1..=4`.
    pub fn p(i: usize) -> Self {
        GradedPoly::var(Var::param(i))
    }

    pub fn monomial(e: Exponents, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        GradedPoly { terms }
    }

    /// Builds a polynomial from raw terms, summing duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, Rational)>>(terms: I) -> Self {
        let mut out = GradedPoly::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Exponents::default())
    }

    /// The value if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `(d, [(e, n)])` with `self = sum n x^e / d`.
    fn integer_form(&self) -> (BigInt, Vec<(Exponents, BigInt)>) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.numer() * (&den / c.denom())))
            .collect();
        (den, terms)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Weighted degree if every term has the same weight. Auxiliary
    /// variables contribute weight 0.
    pub fn weight(&self) -> Result<Weight, AlgebraError> {
        let mut weights = self.terms.keys().map(Exponents::weight);
        let first = weights.next().ok_or(AlgebraError::ZeroHasNoWeight)?;
        if weights.all(|w| w == first) {
            Ok(Weight::Homogeneous(first))
        } else {
            Ok(Weight::Inhomogeneous)
        }
    }

    /// True if only `p1..p4` occur.
    pub fn is_param_only(&self) -> bool {
        self.terms.keys().all(Exponents::is_param_only)
    }

    pub fn pow(&self, n: u32) -> GradedPoly {
        let mut out = GradedPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitutes `images[v]` for every variable `v`.
    pub fn substitute(&self, images: &[GradedPoly; NUM_VARS]) -> GradedPoly {
        // Cache powers lazily; exponents are small.
        let mut powers: Vec<Vec<GradedPoly>> = vec![vec![GradedPoly::one()]; NUM_VARS];
        let mut out = GradedPoly::zero();
        for (e, c) in &self.terms {
            let mut term = GradedPoly::constant(c.clone());
            for (v, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[v].len() <= k as usize {
                    let next = powers[v].last().unwrap() * &images[v];
                    powers[v].push(next);
                }
                term = &term * &powers[v][k as usize];
            }
            out += &term;
        }
        out
    }

    /// Exact evaluation at `(p1, p2, p3, p4)`.
    ///
    /// Panics if an auxiliary variable occurs.
    pub fn eval_rational(&self, point: &[Rational; NUM_PARAMS]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            assert!(
                e.is_param_only(),
                "eval_rational on a polynomial with auxiliary variables"
            );
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(&e.0[..NUM_PARAMS]) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Double-precision evaluation at a parameter point. Each coefficient is
    /// converted to `f64` only when it is multiplied into its monomial.
    ///
    /// Panics if an auxiliary variable occurs.
    pub fn eval_float(&self, point: &ParamPoint) -> f64 {
        let p = point.as_array();
        self.terms
            .iter()
            .map(|(e, c)| {
                assert!(
                    e.is_param_only(),
                    "eval_float on a polynomial with auxiliary variables"
                );
                let mono: f64 = p
                    .iter()
                    .zip(&e.0[..NUM_PARAMS])
                    .map(|(x, &k)| x.powi(k as i32))
                    .product();
                rational_to_f64(c) * mono
            })
            .sum()
    }
}

/// Nearest `f64` to a rational, robust to numerators and denominators
/// beyond the `f64` range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Both parts overflow: rescale by a power of two first.
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000) as i32;
    let num = (r.numer() >> shift as usize).to_f64().unwrap_or(f64::NAN);
    let den = (r.denom() >> shift as usize).to_f64().unwrap_or(f64::NAN);
    num / den
}

/// Exact rational value of a finite `f64`.
pub fn f64_to_rational(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

impl From<Rational> for GradedPoly {
    fn from(c: Rational) -> Self {
        GradedPoly::constant(c)
    }
}

impl<'a> AddAssign<&'a GradedPoly> for GradedPoly {
    fn add_assign(&mut self, rhs: &'a GradedPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a GradedPoly> for GradedPoly {
    fn sub_assign(&mut self, rhs: &'a GradedPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &'a GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &'a GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &'a GradedPoly) -> GradedPoly {
        if self.terms.len() <= 1 || rhs.terms.len() <= 1 {
            let mut out = GradedPoly::zero();
            for (ea, ca) in &self.terms {
                for (eb, cb) in &rhs.terms {
                    out.add_term(ea.add(eb), ca * cb);
                }
            }
            return out;
        }
        // Integer products over a common denominator, reduced once per term.
        let (da, a) = self.integer_form();
        let (db, b) = rhs.integer_form();
        let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                *acc.entry(ea.add(eb)).or_default() += ca * cb;
            }
        }
        let den = da * db;
        GradedPoly {
            terms: acc
                .into_iter()
                .filter(|(_, n)| !n.is_zero())
                .map(|(e, n)| (e, Rational::new(n, den.clone())))
                .collect(),
        }
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr<GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $f(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest weight first, then by exponent vector.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.weight().cmp(&a.weight()).then(a.cmp(b)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mono: Vec<String> =
                e.0.iter()
                    .zip(VAR_NAMES)
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, n)| {
                        if *k == 1 {
                            n.to_string()
                        } else {
                            format!("{n}^{k}")
                        }
                    })
                    .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(i: usize) -> GradedPoly {
        GradedPoly::p(i)
    }

    #[test]
    fn add_cancels() {
        let a = p(1);
        assert!((&a + &(-&a)).is_zero());
        let b = &p(1).pow(2) + &p(2);
        assert_eq!(b.len(), 2);
        let c = &(&p(1).pow(2).scale(&q(1, 16)) - &p(2).scale(&q(1, 4))) + &p(2).scale(&q(1, 4));
        assert_eq!(c, p(1).pow(2).scale(&q(1, 16)));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            &p(1) * &p(1),
            GradedPoly::monomial(Exponents::params([2, 0, 0, 0]), q(1, 1))
        );
        let half = p(1).scale(&q(1, 2));
        assert_eq!(&half * &half, p(1).pow(2).scale(&q(1, 4)));
        let prod = &(&p(1) + &p(2)) * &(&p(1) - &p(2));
        assert_eq!(prod, &p(1).pow(2) - &p(2).pow(2));
    }

    #[test]
    fn weights() {
        assert_eq!(p(1).pow(2).weight().unwrap(), Weight::Homogeneous(4));
        assert_eq!(
            (&p(1).pow(2) * &p(2)).weight().unwrap(),
            Weight::Homogeneous(8)
        );
        assert_eq!((&p(1) + &p(2)).weight().unwrap(), Weight::Inhomogeneous);
        assert!(GradedPoly::zero().weight().is_err());
        assert_eq!(
            GradedPoly::var(Var::K2).weight().unwrap(),
            Weight::Homogeneous(0)
        );
    }

    #[test]
    fn rational_evaluation() {
        let a = &p(1).pow(2) - &p(2);
        let pt = [q(2, 1), q(1, 1), q(0, 1), q(0, 1)];
        assert_eq!(a.eval_rational(&pt), q(3, 1));

        let with_const = &a + &GradedPoly::ratio(7, 3);
        let origin = [q(0, 1), q(0, 1), q(0, 1), q(0, 1)];
        assert_eq!(with_const.eval_rational(&origin), q(7, 3));

        // p1^2/16 - p2/4 at p2 = 2(1 + k^2), k^2 = 1/4.
        let b2 = &p(1).pow(2).scale(&q(1, 16)) - &p(2).scale(&q(1, 4));
        let pt = [q(0, 1), q(5, 2), q(0, 1), q(9, 16)];
        assert_eq!(b2.eval_rational(&pt), q(-5, 8));
    }

    #[test]
    fn float_evaluation() {
        let pt = ParamPoint::new(0.5, 0.0, 0.0, 0.0);
        assert_eq!(p(1).eval_float(&pt), 0.5);
        assert_eq!(
            GradedPoly::one().eval_float(&ParamPoint::new(3.0, -1.0, 2.0, 7.0)),
            1.0
        );
        let a = &p(2).scale(&q(1, 2)) - &p(1).pow(2).scale(&q(1, 8));
        assert_eq!(a.eval_float(&ParamPoint::new(1.0, 2.0, 0.0, 0.0)), 0.875);
    }

    #[test]
    fn display() {
        let b2 = &p(1).pow(2).scale(&q(1, 16)) - &p(2).scale(&q(1, 4));
        assert_eq!(b2.to_string(), "-1/4*p2 + 1/16*p1^2");
        assert_eq!(GradedPoly::zero().to_string(), "0");
        assert_eq!((-&p(3)).to_string(), "-p3");
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let r = Rational::new(&big * BigInt::from(3), big * BigInt::from(4));
        assert_eq!(rational_to_f64(&r), 0.75);
    }

    #[test]
    fn substitution() {
        // p2 -> 2(1 + k2) in p2^2.
        let mut images: [GradedPoly; NUM_VARS] =
            std::array::from_fn(|i| GradedPoly::var(Var::ALL[i]));
        images[1] = (&GradedPoly::one() + &GradedPoly::var(Var::K2)).scale(&q(2, 1));
        let s = p(2).pow(2).substitute(&images);
        let k = GradedPoly::var(Var::K2);
        let expected = &(&GradedPoly::from_int(4) + &k.scale(&q(8, 1))) + &k.pow(2).scale(&q(4, 1));
        assert_eq!(s, expected);
    }
}
