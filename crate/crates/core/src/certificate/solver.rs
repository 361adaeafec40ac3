//! Certificates found by solving for coefficients directly.
//!
//! Unknowns are the coefficients on the generators `t^{−sk}(t^s−1)^n` for the
//! admissible `k` and the given dilations; rows are exponent coordinates;
//! the right-hand side is `r_n`. This shares nothing with the induction
//! beyond the generator formula and so serves as its oracle.

use super::{generator, verify_with, CaseTag, CertTerm, Certificate};
use crate::difference::{check_order, mz_polynomial};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::par::Exec;
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// `{1, 2, 4, …, 2^{n−1}}`.
pub fn default_s_candidates(n: u32) -> Vec<u64> {
    (0..n.max(1)).map(|i| 1u64 << i).collect()
}

pub fn certify_solver(n: u32, case: CaseTag, s_candidates: &[u64]) -> Result<Certificate> {
    certify_solver_with(n, case, s_candidates, Exec::default())
}

pub fn certify_solver_with(n: u32, case: CaseTag, s_candidates: &[u64], exec: Exec) -> Result<Certificate> {
    check_order(n, case.min_order())?;
    let mut svals: Vec<u64> = s_candidates.to_vec();
    svals.sort_unstable();
    svals.dedup();
    if let Some(&bad) = svals.iter().find(|&&s| s == 0) {
        return Err(Error::BadDilation(bad as i64));
    }

    // Columns ordered by s ascending then |k| ascending: pivots are taken
    // left to right, so the largest dilations are the first to be left free.
    let mut columns = Vec::new();
    for &s in &svals {
        for k in case.admissible_k(n) {
            columns.push((k, s));
        }
    }
    let polys = exec.map(&columns, |&(k, s)| generator(n, k, s));
    let polys = polys.into_iter().collect::<Result<Vec<_>>>()?;
    let target = mz_polynomial(n)?;

    let mut row_of: BTreeMap<i64, usize> = BTreeMap::new();
    for e in polys.iter().flat_map(|p| p.exponents()).chain(target.exponents()) {
        let next = row_of.len();
        row_of.entry(e).or_insert(next);
    }
    let mut matrix = vec![vec![Rational::zero(); columns.len()]; row_of.len()];
    for (j, p) in polys.iter().enumerate() {
        for (e, c) in p.terms() {
            matrix[row_of[&e]][j] = c.clone();
        }
    }
    let mut rhs = vec![Rational::zero(); row_of.len()];
    for (e, c) in target.terms() {
        rhs[row_of[&e]] = c.clone();
    }

    let solution = solve(&matrix, &rhs, exec).ok_or_else(|| Error::Infeasible { n, candidates: svals.clone() })?;
    let terms = columns
        .iter()
        .zip(solution.values)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(k, s), coeff)| CertTerm { k, s, coeff })
        .collect();
    let cert = Certificate::new(n, case, terms)?;
    let v = verify_with(&cert, exec);
    if !v.ok {
        return Err(Error::Invariant(format!("solver certificate for n = {n} failed: {}", v.diagnostic())));
    }
    Ok(cert)
}

/// Tries the powers of two up to `s_max` (default `2^{n−1}`), then every
/// integer in `1..=s_max` if that set is infeasible.
pub fn certify_solver_with_fallback(n: u32, case: CaseTag, s_max: Option<u64>) -> Result<Certificate> {
    check_order(n, case.min_order())?;
    let s_max = s_max.unwrap_or(1 << (n - 1));
    if s_max == 0 {
        return Err(Error::BadDilation(0));
    }
    let powers: Vec<u64> = default_s_candidates(64).into_iter().take_while(|&s| s <= s_max).collect();
    match certify_solver(n, case, &powers) {
        Err(Error::Infeasible { .. }) if powers.len() as u64 != s_max => {
            let all: Vec<u64> = (1..=s_max).collect();
            certify_solver(n, case, &all)
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn n2_unique_solution() {
        let c = certify_solver(2, CaseTag::Ggr, &[1]).unwrap();
        assert_eq!(c.terms(), &[CertTerm { k: 0, s: 1, coeff: int(1) }]);
        let c = certify_solver(2, CaseTag::Ggr, &[1, 2]).unwrap();
        assert!(verify_with(&c, Exec::Sequential).ok);
    }

    #[test]
    fn n3_needs_a_dilation() {
        assert!(matches!(certify_solver(3, CaseTag::Ggr, &[1]), Err(Error::Infeasible { n: 3, .. })));
        let c = certify_solver(3, CaseTag::Ggr, &default_s_candidates(3)).unwrap();
        assert!(c.ks().iter().all(|&k| k == 1 || k == 2));
    }

    #[test]
    fn policies_agree() {
        let a = certify_solver_with(6, CaseTag::Ggr, &default_s_candidates(6), Exec::Sequential).unwrap();
        let b = certify_solver_with(6, CaseTag::Ggr, &default_s_candidates(6), Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn n9_with_default_candidates() {
        let c = certify_solver(9, CaseTag::Ggr, &default_s_candidates(9)).unwrap();
        assert!(c.terms().iter().all(|t| t.k != 0));
    }

    #[test]
    fn fallback_widens_to_all_integers() {
        // s = 3 alone is useless for n = 3; {1, 2} (powers ≤ 3) already suffices.
        let c = certify_solver_with_fallback(3, CaseTag::Ggr, Some(3)).unwrap();
        assert!(c.terms().iter().all(|t| t.s <= 2));
        assert!(matches!(certify_solver_with_fallback(3, CaseTag::Ggr, Some(1)), Err(Error::Infeasible { .. })));
        let c = certify_solver_with_fallback(5, CaseTag::Variant, None).unwrap();
        assert!(verify_with(&c, Exec::Sequential).ok);
    }

    #[test]
    fn candidate_validation() {
        assert_eq!(certify_solver(2, CaseTag::Ggr, &[0, 1]), Err(Error::BadDilation(0)));
        assert_eq!(default_s_candidates(4), vec![1, 2, 4, 8]);
    }
}
