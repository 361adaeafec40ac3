//! Sparse Laurent polynomials over the rationals.
//!
//! A [`LaurentPoly`] is a finite map from signed exponents to nonzero
//! coefficients. Every constructor and operation returns the canonical form
//! (no stored zero), so equality is plain structural equality of the maps.

use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c·t^e`.
    pub fn monomial(e: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `t`.
    pub fn t() -> Self {
        Self::monomial(1, Rational::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `(t^s − 1)^n`, expanded with binomial coefficients.
    pub fn dilated_binomial(s: u64, n: u32) -> Self {
        let s = i64::try_from(s).expect("dilation fits in i64");
        Self::from_terms((0..=n).map(|j| {
            let mut c = Rational::from_integer(binomial(n, j));
            if (n - j) % 2 == 1 {
                c = -c;
            }
            let e = s.checked_mul(j as i64).expect("exponent overflow");
            (e, c)
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub(crate) fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c·other` in place.
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&e, v) in &other.terms {
            self.add_term(e, v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect() }
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&x, v)| (x.checked_add(e).expect("exponent overflow"), v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `a(t) ↦ a(t^s)`; the image of the dilation `h ↦ s·h`.
    pub fn substitute_power(&self, s: i64) -> Result<Self> {
        if s < 1 {
            return Err(Error::BadDilation(s));
        }
        let mut terms = BTreeMap::new();
        for (&e, c) in &self.terms {
            let e = e.checked_mul(s).ok_or(Error::ExponentOverflow)?;
            terms.insert(e, c.clone());
        }
        Ok(Self { terms })
    }

    /// `θ_m(a) = Σ c_e · e^m`, with `0^0 = 1`.
    pub fn theta_moment(&self, m: u32) -> Rational {
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            let p = num_traits::pow(BigInt::from(e), m as usize);
            acc += c * Rational::from_integer(p);
        }
        acc
    }

    /// Exact value `Σ c_e x^e`.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() && self.min_exponent().is_some_and(|e| e < 0) {
            return Err(Error::ZeroWithNegativeExponent);
        }
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), e.unsigned_abs() as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a.checked_add(b).expect("exponent overflow"), x * y);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                $tr::$f(&self, &rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

/// Renders as `c*t^e + ...` in descending exponent order, e.g.
/// `t^2 - 2*t + 1` or `3/2*t^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let monomial = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&monomial)?;
            } else {
                write!(f, "{magnitude}*{monomial}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    fn t_minus_one() -> LaurentPoly {
        poly(&[(1, 1), (0, -1)])
    }

    #[test]
    fn add_examples() {
        let a = t_minus_one();
        assert!((&a + &poly(&[(0, 1), (1, -1)])).is_zero());
        assert_eq!(&a + &a, poly(&[(1, 2), (0, -2)]));
        let r2 = &a.substitute_power(2).unwrap() + &a.scale(&int(-2));
        assert_eq!(r2, poly(&[(2, 1), (1, -2), (0, 1)]));
    }

    #[test]
    fn scale_examples() {
        assert!(t_minus_one().scale(&int(0)).is_zero());
        assert_eq!(t_minus_one().scale(&int(-2)), poly(&[(1, -2), (0, 2)]));
        let g = t_minus_one().pow(2).shift(-1);
        assert_eq!(g.scale(&int(3)), poly(&[(1, 3), (0, -6), (-1, 3)]));
    }

    #[test]
    fn mul_examples() {
        let a = t_minus_one();
        assert_eq!(&a * &a, poly(&[(2, 1), (1, -2), (0, 1)]));
        let inv_t = poly(&[(-1, 1)]);
        assert_eq!(&inv_t * &a.pow(3), poly(&[(2, 1), (1, -3), (0, 3), (-1, -1)]));
        assert_eq!(&a.pow(5) * &LaurentPoly::one(), a.pow(5));
    }

    #[test]
    fn dilated_binomial_matches_power() {
        for s in 1..5u64 {
            for n in 0..7 {
                let direct = poly(&[(s as i64, 1), (0, -1)]).pow(n);
                assert_eq!(LaurentPoly::dilated_binomial(s, n), direct);
            }
        }
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!(t_minus_one().substitute_power(2).unwrap(), poly(&[(2, 1), (0, -1)]));
        let p = poly(&[(3, 2), (-2, 5)]);
        assert_eq!(p.substitute_power(1).unwrap(), p);
        let g = t_minus_one().pow(2).shift(-1);
        assert_eq!(g.substitute_power(3).unwrap(), poly(&[(3, 1), (0, -2), (-3, 1)]));
        assert_eq!(p.substitute_power(0), Err(Error::BadDilation(0)));
        assert_eq!(p.substitute_power(-2), Err(Error::BadDilation(-2)));
        assert_eq!(poly(&[(i64::MAX / 2, 1)]).substitute_power(3), Err(Error::ExponentOverflow));
    }

    #[test]
    fn theta_moment_examples() {
        assert_eq!(t_minus_one().theta_moment(0), int(0));
        assert_eq!(t_minus_one().pow(2).theta_moment(2), int(2));
        // 0^0 = 1: the constant term counts at m = 0 only.
        assert_eq!(LaurentPoly::one().theta_moment(0), int(1));
        assert_eq!(LaurentPoly::one().theta_moment(3), int(0));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(t_minus_one().evaluate(&int(1)).unwrap(), int(0));
        assert_eq!(t_minus_one().pow(2).evaluate(&int(3)).unwrap(), int(4));
        let g = t_minus_one().pow(2).shift(-1);
        assert_eq!(g.evaluate(&int(2)).unwrap(), frac(1, 2));
        assert_eq!(g.evaluate(&int(0)), Err(Error::ZeroWithNegativeExponent));
        assert_eq!(t_minus_one().evaluate(&int(0)).unwrap(), int(-1));
    }

    #[test]
    fn display_is_descending() {
        assert_eq!(t_minus_one().pow(2).to_string(), "t^2 - 2*t + 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let p = LaurentPoly::from_terms([(-1, frac(3, 2)), (0, int(-1)), (4, int(-1))]);
        assert_eq!(p.to_string(), "-t^4 - 1 + 3/2*t^-1");
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let p = LaurentPoly::from_terms([(1, int(2)), (1, int(-2)), (0, int(0))]);
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero());
        let q = &t_minus_one() - &t_minus_one();
        assert_eq!(q.len(), 0);
    }
}
