//! Generalized differences `Σ c_j f(c + b_j h)` on integer nodes.
//!
//! A scheme maps to the Laurent polynomial `Σ c_j t^{b_j}`; dilating `h` by
//! `s` corresponds to `t ↦ t^s`. The GGR differences `Δ_k` and the
//! Marcinkiewicz-Zygmund difference `R_n` are built here.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{binomial, pow2, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceScheme {
    terms: BTreeMap<i64, Rational>,
    order: u32,
}

impl DifferenceScheme {
    /// Zero coefficients are dropped; repeated nodes are rejected.
    pub fn new<I>(terms: I, order: u32) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut map = BTreeMap::new();
        for (b, c) in terms {
            match map.entry(b) {
                Entry::Occupied(_) => return Err(Error::DuplicateNode(b)),
                Entry::Vacant(v) => {
                    v.insert(c);
                }
            }
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(Self { terms: map, order })
    }

    pub fn empty(order: u32) -> Self {
        Self { terms: BTreeMap::new(), order }
    }

    /// The quotient order `n`: the scheme is divided by `h^n`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `(node, coefficient)` pairs in descending node order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().rev().map(|(&b, c)| (b, c))
    }

    pub fn nodes(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().rev().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(&b, c)| (b, c.clone())))
    }

    pub fn from_laurent(p: &LaurentPoly, order: u32) -> Self {
        Self { terms: p.terms().map(|(e, c)| (e, c.clone())).collect(), order }
    }

    /// `Δ(h) ↦ Δ(s·h)`.
    pub fn dilate(&self, s: i64) -> Result<Self> {
        if s < 1 {
            return Err(Error::BadDilation(s));
        }
        let mut terms = BTreeMap::new();
        for (&b, c) in &self.terms {
            terms.insert(b.checked_mul(s).ok_or(Error::ExponentOverflow)?, c.clone());
        }
        Ok(Self { terms, order: self.order })
    }

    /// Applies the scheme to sampled values: `Σ c_j · f(b_j)`.
    ///
    /// `sample` is called once per node.
    pub fn apply<F>(&self, mut sample: F) -> Rational
    where
        F: FnMut(i64) -> Rational,
    {
        self.terms.iter().fold(Rational::zero(), |acc, (&b, c)| acc + c * sample(b))
    }
}

/// `Δ_k(h) = Σ_{j=0}^{n} (−1)^{n−j} C(n,j) f(c + (j−k)h)`.
pub fn ggr_difference(n: u32, k: i64) -> Result<DifferenceScheme> {
    if n < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: n });
    }
    let terms = (0..=n).map(|j| {
        let mut c = Rational::from_integer(binomial(n, j));
        if (n - j) % 2 == 1 {
            c = -c;
        }
        (j as i64 - k, c)
    });
    DifferenceScheme::new(terms, n)
}

/// Hard ceiling on `n` for the recursive constructions; node `2^{n−1}` and
/// its dilations must stay well inside `i64`.
pub const MAX_ORDER: u32 = 48;

pub(crate) fn check_order(n: u32, min: u32) -> Result<()> {
    check_order_within(n, min, MAX_ORDER)
}

/// Range check with a caller-chosen ceiling (clamped to [`MAX_ORDER`]).
pub fn check_order_within(n: u32, min: u32, max: u32) -> Result<()> {
    let max = max.min(MAX_ORDER);
    if n < min {
        return Err(Error::OrderTooSmall { min, got: n });
    }
    if n > max {
        return Err(Error::OrderTooLarge { max, got: n });
    }
    Ok(())
}

/// `r_1 = t − 1`, `r_n(t) = r_{n−1}(t²) − 2^{n−1} r_{n−1}(t)`.
pub fn mz_polynomial(n: u32) -> Result<LaurentPoly> {
    check_order(n, 1)?;
    let mut r = LaurentPoly::from_terms([(1, Rational::one()), (0, -Rational::one())]);
    for m in 2..=n {
        let factor = -Rational::from_integer(pow2(m - 1));
        let mut next = r.substitute_power(2)?;
        next.add_scaled(&r, &factor);
        r = next;
    }
    Ok(r)
}

/// `R_1(h) = f(c+h) − f(c)`, `R_n(h) = R_{n−1}(2h) − 2^{n−1} R_{n−1}(h)`.
pub fn mz_difference(n: u32) -> Result<DifferenceScheme> {
    Ok(DifferenceScheme::from_laurent(&mz_polynomial(n)?, n))
}

/// One summand `coeff · d(s·h)` of a linear combination.
#[derive(Clone, Debug)]
pub struct Part {
    pub coeff: Rational,
    pub s: i64,
    pub scheme: DifferenceScheme,
}

/// `Σ coeff · d(s·h)` with coinciding nodes merged and zeros dropped.
///
/// The order of the result is the largest order among the parts (0 when
/// there are none).
pub fn linear_combination(parts: &[Part]) -> Result<DifferenceScheme> {
    let mut acc = LaurentPoly::zero();
    let mut order = 0;
    for part in parts {
        let dilated = part.scheme.to_laurent().substitute_power(part.s)?;
        acc.add_scaled(&dilated, &part.coeff);
        order = order.max(part.scheme.order());
    }
    Ok(DifferenceScheme::from_laurent(&acc, order))
}

/// Renders as `f(c + 2h) - 2*f(c + h) + f(c)`, descending nodes.
impl fmt::Display for DifferenceScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            match b {
                0 => f.write_str("f(c)")?,
                1 => f.write_str("f(c + h)")?,
                -1 => f.write_str("f(c - h)")?,
                b if b > 0 => write!(f, "f(c + {b}h)")?,
                b => write!(f, "f(c - {}h)", b.unsigned_abs())?,
            }
        }
        Ok(())
    }
}
