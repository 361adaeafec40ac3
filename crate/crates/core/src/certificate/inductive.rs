//! Certificates built by induction on n.
//!
//! The representation of `r_m` is carried in a basis adapted to the
//! recursion `r_{m+1}(t) = r_m(t²) − 2^m r_m(t)`:
//!
//! * Variant case: powers `(t^s − 1)^{m+e}`, `0 ≤ e ≤ m−2`. Every power with
//!   `e ≥ 1` maps to two powers of the same kind at order `m+1` (one of them
//!   dilated by 2). The power with `e = 0` yields
//!   `(t^s−1)^m((t^s+1)^m − 2^m) = (t^s−1)^{m+1} p(t^s)` and `p` is rewritten
//!   in powers of `(u − 1)`.
//! * GGR case: at each order the generators `t^{−k}(t−1)^m` of one dilation
//!   slice are rewritten as `A = t^{−c}(t−1)^m` (`c = ⌊m/2⌋`) plus the
//!   differences `B_k = t^{−k}(t−1)^{m+1}`. `B_k` maps to generators at order
//!   `m+1` directly; `A` yields `t^{−2c}(t−1)^{m+1} p(t)` with
//!   `p = ((t+1)^m − 2^m t^c)/(t−1)`.
//!
//! Every division by `(u − 1)` is exact; a nonzero remainder is reported as
//! an invariant violation. Dilations are always powers of two.

use super::{verify, CaseTag, CertTerm, Certificate};
use crate::difference::check_order;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{binomial, pow2, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A generator in one of the intermediate bases used by the induction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisElement {
    /// `weight · (t^s − 1)^{n+extra}`.
    Power { s: u64, extra: u32, weight: Rational },
    /// `weight · t^{−s·k} (t^s − 1)^{n+extra}`.
    Shifted { k: i64, s: u64, extra: u32, weight: Rational },
}

impl BasisElement {
    pub fn to_laurent(&self, n: u32) -> LaurentPoly {
        match self {
            BasisElement::Power { s, extra, weight } => LaurentPoly::dilated_binomial(*s, n + extra).scale(weight),
            BasisElement::Shifted { k, s, extra, weight } => {
                let shift = -k * *s as i64;
                LaurentPoly::dilated_binomial(*s, n + extra).shift(shift).scale(weight)
            }
        }
    }
}

fn add(map: &mut BTreeMap<(u64, i64), Rational>, key: (u64, i64), c: Rational) {
    let slot = map.entry(key).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

/// Synthetic division by `(u − 1)`; coefficients ascending.
fn divide_by_u_minus_one(p: &[Rational]) -> (Vec<Rational>, Rational) {
    if p.is_empty() {
        return (Vec::new(), Rational::zero());
    }
    let mut quotient = vec![Rational::zero(); p.len() - 1];
    let mut carry = Rational::zero();
    for i in (1..p.len()).rev() {
        carry += &p[i];
        quotient[i - 1] = carry.clone();
    }
    (quotient, carry + &p[0])
}

fn exact_quotient(p: &[Rational], what: &str) -> Result<Vec<Rational>> {
    let (q, rem) = divide_by_u_minus_one(p);
    if !rem.is_zero() {
        return Err(Error::Invariant(format!("{what} is not divisible by (u - 1): remainder {rem}")));
    }
    Ok(q)
}

/// Coefficients of `p` in the basis `(u − 1)^i`.
fn taylor_at_one(p: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(p.len());
    let mut rest = p.to_vec();
    while !rest.is_empty() {
        let (q, rem) = divide_by_u_minus_one(&rest);
        out.push(rem);
        rest = q;
    }
    out
}

/// `p(u) = ((u + 1)^m − 2^m u^e) / (u − 1)`, coefficients ascending.
fn first_kind_quotient(m: u32, e: u32) -> Result<Vec<Rational>> {
    let mut numerator: Vec<Rational> = (0..=m).map(|j| Rational::from_integer(binomial(m, j))).collect();
    numerator[e as usize] -= Rational::from_integer(pow2(m));
    exact_quotient(&numerator, &format!("(u+1)^{m} - 2^{m} u^{e}"))
}

/// Variant-case state at order `m`: `(s, e) ↦ weight` on `(t^s−1)^{m+e}`.
fn variant_chain(n: u32) -> Result<BTreeMap<(u64, i64), Rational>> {
    let mut state = BTreeMap::new();
    state.insert((1u64, 0i64), Rational::one());
    for m in 2..n {
        let scale = Rational::from_integer(pow2(m));
        let p = first_kind_quotient(m, 0)?;
        let taylor = taylor_at_one(&p);
        let mut next = BTreeMap::new();
        for (&(s, e), c) in &state {
            if e >= 1 {
                add(&mut next, (2 * s, e - 1), c.clone());
                add(&mut next, (s, e - 1), -(c * &scale));
            } else {
                for (i, a) in taylor.iter().enumerate() {
                    add(&mut next, (s, i as i64), c * a);
                }
            }
        }
        state = next;
    }
    Ok(state)
}

/// GGR generator form at order `m`: `(s, k) ↦ weight` on `t^{−sk}(t^s−1)^m`.
type GeneratorMap = BTreeMap<(u64, i64), Rational>;

/// Basis form of a generator map at order `m`: `A` weights per `s`,
/// `B_k` weights per `(s, k)`.
struct BasisForm {
    a: BTreeMap<u64, Rational>,
    b: BTreeMap<(u64, i64), Rational>,
}

fn to_basis_form(m: u32, gens: &GeneratorMap) -> BasisForm {
    let center = (m / 2) as i64;
    let mut a: BTreeMap<u64, Rational> = BTreeMap::new();
    let mut b = BTreeMap::new();
    for (&(s, k), c) in gens {
        *a.entry(s).or_insert_with(Rational::zero) += c;
        // g_k = A − Σ_{i=c+1}^{k} B_i above the center, A + Σ_{i=k+1}^{c} B_i below.
        if k > center {
            for i in center + 1..=k {
                add(&mut b, (s, i), -c.clone());
            }
        } else {
            for i in k + 1..=center {
                add(&mut b, (s, i), c.clone());
            }
        }
    }
    a.retain(|_, c| !c.is_zero());
    BasisForm { a, b }
}

fn ggr_step(m: u32, gens: &GeneratorMap) -> Result<GeneratorMap> {
    let center = m / 2;
    let offset = 2 * center as i64;
    let scale = Rational::from_integer(pow2(m));
    let p = first_kind_quotient(m, center)?;
    let form = to_basis_form(m, gens);
    let mut next = BTreeMap::new();
    for (&s, c) in &form.a {
        for (i, coeff) in p.iter().enumerate() {
            add(&mut next, (s, offset - i as i64), c * coeff);
        }
    }
    for (&(s, k), c) in &form.b {
        add(&mut next, (2 * s, k), c.clone());
        add(&mut next, (s, k), -(c * &scale));
    }
    Ok(next)
}

fn ggr_chain(n: u32) -> Result<GeneratorMap> {
    let mut gens = BTreeMap::new();
    gens.insert((1u64, 0i64), Rational::one());
    for m in 1..n {
        gens = ggr_step(m, &gens)?;
    }
    Ok(gens)
}

/// The representation of `r_n` in the intermediate basis: powers
/// `(t^s−1)^{n+e}` for the variant case; `A` and `B_k` elements for GGR.
pub fn basis_representation(n: u32, case: CaseTag) -> Result<Vec<BasisElement>> {
    check_order(n, case.min_order())?;
    Ok(match case {
        CaseTag::Variant => variant_chain(n)?
            .into_iter()
            .map(|((s, e), weight)| BasisElement::Power { s, extra: e as u32, weight })
            .collect(),
        CaseTag::Ggr => {
            let form = to_basis_form(n, &ggr_chain(n)?);
            let center = (n / 2) as i64;
            let a = form.a.into_iter().map(|(s, weight)| BasisElement::Shifted { k: center, s, extra: 0, weight });
            let b = form.b.into_iter().map(|((s, k), weight)| BasisElement::Shifted { k, s, extra: 1, weight });
            a.chain(b).collect()
        }
    })
}

/// Runs the induction and returns a verified certificate for `r_n`.
pub fn certify_inductive(n: u32, case: CaseTag) -> Result<Certificate> {
    check_order(n, case.min_order())?;
    let mut terms: BTreeMap<(u64, i64), Rational> = BTreeMap::new();
    match case {
        CaseTag::Ggr => terms = ggr_chain(n)?,
        CaseTag::Variant => {
            // (u − 1)^e = Σ_j (−1)^{e−j} C(e, j) u^j, and u^j (t^s−1)^n is the generator k = −j.
            for ((s, e), c) in variant_chain(n)? {
                let e = e as u32;
                for j in 0..=e {
                    let mut b = Rational::from_integer(binomial(e, j));
                    if (e - j) % 2 == 1 {
                        b = -b;
                    }
                    add(&mut terms, (s, -(j as i64)), c.clone() * b);
                }
            }
        }
    }
    let cert = Certificate::new(n, case, terms.into_iter().map(|((s, k), coeff)| CertTerm { k, s, coeff }).collect())?;
    let v = verify(&cert);
    if !v.ok {
        return Err(Error::Invariant(format!("inductive certificate for n = {n} failed: {}", v.diagnostic())));
    }
    Ok(cert)
}
