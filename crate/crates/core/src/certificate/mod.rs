//! Certificates `r_n = Σ c_{k,s} · t^{−sk}(t^s − 1)^n`.
//!
//! A [`Certificate`] lists `(k, s, coeff)` triples. Each triple names the
//! dilated GGR difference `Δ_k(s·h)`, whose Laurent image is
//! `t^{−sk}(t^s−1)^n`. Two independent producers exist: the constructive
//! induction in [`inductive`] and the exact linear solve in [`solver`].
//! [`verify`] checks either one against the recursion for `r_n` with exact
//! polynomial equality.

pub mod inductive;
pub mod json;
pub mod solver;

use crate::difference::{ggr_difference, linear_combination, mz_difference, mz_polynomial, DifferenceScheme, Part};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::par::Exec;
use crate::rational::{binomial, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use inductive::{basis_representation, certify_inductive, BasisElement};
pub use solver::{certify_solver, certify_solver_with, default_s_candidates};

/// Which family of generalized Riemann differences may appear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    /// `k ∈ {(0), 1, …, n−1}`, with 0 admitted only for even n (and for n = 1).
    Ggr,
    /// `k ∈ {−(n−2), …, 0}`.
    Variant,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Ggr => "ggr",
            CaseTag::Variant => "variant",
        }
    }

    pub fn min_order(self) -> u32 {
        match self {
            CaseTag::Ggr => 1,
            CaseTag::Variant => 2,
        }
    }

    /// Admissible `k`, ascending by `|k|`.
    pub fn admissible_k(self, n: u32) -> Vec<i64> {
        let n = n as i64;
        match self {
            CaseTag::Ggr if n == 1 => vec![0],
            CaseTag::Ggr if n % 2 == 0 => (0..n).collect(),
            CaseTag::Ggr => (1..n).collect(),
            CaseTag::Variant => (0..=n - 2).map(|k| -k).collect(),
        }
    }

    pub fn admits(self, n: u32, k: i64) -> bool {
        let n = n as i64;
        match self {
            CaseTag::Ggr if n == 1 => k == 0,
            CaseTag::Ggr => (0..n).contains(&k) && (k != 0 || n % 2 == 0),
            CaseTag::Variant => n >= 2 && (-(n - 2)..=0).contains(&k),
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ggr" => Ok(CaseTag::Ggr),
            "variant" => Ok(CaseTag::Variant),
            other => Err(format!("unknown case {other:?} (expected \"ggr\" or \"variant\")")),
        }
    }
}

/// `t^{−sk}(t^s − 1)^n`, the image of `Δ_k(s·h)` at order n.
pub fn generator(n: u32, k: i64, s: u64) -> Result<LaurentPoly> {
    let s = i64::try_from(s).map_err(|_| Error::ExponentOverflow)?;
    if s < 1 {
        return Err(Error::BadDilation(s));
    }
    let mut terms = Vec::with_capacity(n as usize + 1);
    for j in 0..=n {
        let node = (j as i64).checked_sub(k).ok_or(Error::ExponentOverflow)?;
        let e = node.checked_mul(s).ok_or(Error::ExponentOverflow)?;
        let mut c = Rational::from_integer(binomial(n, j));
        if (n - j) % 2 == 1 {
            c = -c;
        }
        terms.push((e, c));
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// Enumerates the generators of `V_n` with `1 ≤ s ≤ s_max`, ordered by `s`
/// then `|k|`.
pub fn generators(n: u32, case: CaseTag, s_max: u64) -> Result<Vec<(i64, u64, LaurentPoly)>> {
    crate::difference::check_order(n, case.min_order())?;
    let mut out = Vec::new();
    for s in 1..=s_max {
        for k in case.admissible_k(n) {
            out.push((k, s, generator(n, k, s)?));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertTerm {
    pub k: i64,
    pub s: u64,
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    n: u32,
    case: CaseTag,
    terms: Vec<CertTerm>,
}

impl Certificate {
    /// Sorts terms by `(s, k)` and drops zero coefficients. Repeated
    /// `(k, s)` pairs and `s = 0` are rejected. The `k`-range is not
    /// checked here; [`verify`] reports range violations.
    pub fn new(n: u32, case: CaseTag, mut terms: Vec<CertTerm>) -> Result<Self> {
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by_key(|t| (t.s, t.k));
        for t in &terms {
            if t.s == 0 {
                return Err(Error::BadDilation(0));
            }
        }
        for w in terms.windows(2) {
            if (w[0].s, w[0].k) == (w[1].s, w[1].k) {
                return Err(Error::DuplicateTerm { k: w[0].k, s: w[0].s });
            }
        }
        Ok(Self { n, case, terms })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }

    /// Terms sorted by `(s ascending, k ascending)`.
    pub fn terms(&self) -> &[CertTerm] {
        &self.terms
    }

    /// `Σ coeff · t^{−sk}(t^s−1)^n`.
    pub fn expand(&self) -> Result<LaurentPoly> {
        self.expand_with(Exec::default())
    }

    pub fn expand_with(&self, exec: Exec) -> Result<LaurentPoly> {
        let n = self.n;
        exec.map_reduce(
            &self.terms,
            |t| generator(n, t.k, t.s).map(|g| g.scale(&t.coeff)),
            || Ok(LaurentPoly::zero()),
            |a, b| Ok(&a? + &b?),
        )
    }

    /// `Σ coeff · s^n · n!`, the order-n moment of the expansion.
    pub fn moment_checksum(&self) -> Rational {
        let fact = Rational::from_integer(crate::rational::factorial(self.n));
        self.terms.iter().fold(Rational::zero(), |acc, t| {
            let sn = num_traits::pow(num_bigint::BigInt::from(t.s), self.n as usize);
            acc + &t.coeff * Rational::from_integer(sn) * &fact
        })
    }

    /// `(k, s)` pairs whose `k` lies outside the case's admissible range.
    pub fn range_violations(&self) -> Vec<(i64, u64)> {
        self.terms.iter().filter(|t| !self.case.admits(self.n, t.k)).map(|t| (t.k, t.s)).collect()
    }

    /// Distinct `k` values used, ascending.
    pub fn ks(&self) -> BTreeSet<i64> {
        self.terms.iter().map(|t| t.k).collect()
    }
}

/// Outcome of [`verify`]. `ok` holds iff the expansion equals `r_n`
/// exactly and every `k` is admissible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    /// `expansion − r_n`; zero when the identity holds.
    pub difference: Option<LaurentPoly>,
    pub range_violations: Vec<(i64, u64)>,
    /// Set when the identity could not be evaluated at all.
    pub error: Option<Error>,
}

impl Verification {
    pub fn diagnostic(&self) -> String {
        if self.ok {
            return "identity holds".to_string();
        }
        let mut parts = Vec::new();
        if let Some(e) = &self.error {
            parts.push(e.to_string());
        }
        if let Some(d) = self.difference.as_ref().filter(|d| !d.is_zero()) {
            parts.push(format!("expansion - r_n = {d}"));
        }
        if !self.range_violations.is_empty() {
            let list: Vec<String> = self.range_violations.iter().map(|(k, s)| format!("(k={k}, s={s})")).collect();
            parts.push(format!("inadmissible k: {}", list.join(", ")));
        }
        parts.join("; ")
    }
}

pub fn verify(cert: &Certificate) -> Verification {
    verify_with(cert, Exec::default())
}

pub fn verify_with(cert: &Certificate, exec: Exec) -> Verification {
    let range_violations = cert.range_violations();
    let outcome = crate::difference::check_order(cert.n, cert.case.min_order())
        .and_then(|_| Ok((cert.expand_with(exec)?, mz_polynomial(cert.n)?)));
    match outcome {
        Ok((expansion, target)) => {
            let difference = &expansion - &target;
            Verification {
                ok: difference.is_zero() && range_violations.is_empty(),
                difference: Some(difference),
                range_violations,
                error: None,
            }
        }
        Err(e) => Verification { ok: false, difference: None, range_violations, error: Some(e) },
    }
}

/// `R_n(h)` alongside `Σ c_{k,s} Δ_k(s·h)` as difference schemes.
#[derive(Debug, Clone)]
pub struct Identity {
    pub certificate: Certificate,
    pub mz: DifferenceScheme,
    pub combined: DifferenceScheme,
    pub equal: bool,
}

impl Identity {
    pub fn parts(&self) -> Result<Vec<Part>> {
        parts_of(&self.certificate)
    }
}

pub(crate) fn parts_of(cert: &Certificate) -> Result<Vec<Part>> {
    cert.terms
        .iter()
        .map(|t| {
            Ok(Part {
                coeff: t.coeff.clone(),
                s: i64::try_from(t.s).map_err(|_| Error::ExponentOverflow)?,
                scheme: ggr_difference(cert.n, t.k)?,
            })
        })
        .collect()
}

/// Builds the difference-level identity for a verified certificate.
pub fn certificate_identity(cert: &Certificate) -> Result<Identity> {
    let v = verify(cert);
    if !v.ok {
        return Err(Error::Unverified(v.diagnostic()));
    }
    let mz = mz_difference(cert.n)?;
    let combined = linear_combination(&parts_of(cert)?)?;
    let equal = combined == mz;
    Ok(Identity { certificate: cert.clone(), mz, combined, equal })
}

/// `R_3(h) = 3/4*Δ_1(h) - ... + Δ_2(2h)`.
impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}(h) = ", self.certificate.n)?;
        for (i, t) in self.certificate.terms.iter().enumerate() {
            let neg = t.coeff < Rational::zero();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = if neg { -t.coeff.clone() } else { t.coeff.clone() };
            if magnitude != Rational::from_integer(1.into()) {
                write!(f, "{magnitude}*")?;
            }
            let arg = if t.s == 1 { "h".to_string() } else { format!("{}h", t.s) };
            write!(f, "D_{}({arg})", t.k)?;
        }
        Ok(())
    }
}

/// How a certificate is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Inductive,
    Solver,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "inductive" => Ok(Strategy::Inductive),
            "solver" => Ok(Strategy::Solver),
            other => Err(format!("unknown strategy {other:?} (expected \"inductive\" or \"solver\")")),
        }
    }
}

/// `s_max` only affects the solver; see [`solver::certify_solver_with_fallback`].
pub fn certify(n: u32, case: CaseTag, strategy: Strategy, s_max: Option<u64>) -> Result<Certificate> {
    match strategy {
        Strategy::Inductive => certify_inductive(n, case),
        Strategy::Solver => solver::certify_solver_with_fallback(n, case, s_max),
    }
}

/// Certifies each order independently; results are in input order.
pub fn certify_batch(ns: &[u32], case: CaseTag, strategy: Strategy, exec: Exec) -> Vec<Result<Certificate>> {
    exec.map(ns, |&n| certify(n, case, strategy, None))
}
