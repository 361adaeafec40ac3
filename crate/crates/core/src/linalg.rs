//! Exact Gauss-Jordan elimination over the rationals.

use crate::par::Exec;
use crate::rational::Rational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// One value per column; free columns are zero.
    pub values: Vec<Rational>,
    /// Pivot columns, ascending.
    pub pivots: Vec<usize>,
}

impl Solution {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Solves `A x = b`, returning `None` when the system is inconsistent.
///
/// Pivots are taken left to right, so earlier columns are preferred as
/// basic variables and later columns become free (set to zero). Row updates
/// for a pivot are independent and run under `exec`.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational], exec: Exec) -> Option<Solution> {
    assert_eq!(matrix.len(), rhs.len(), "one right-hand side per row");
    let cols = matrix.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let lead = rows[rank][col].clone();
        for v in &mut rows[rank][col..] {
            *v /= &lead;
        }
        let (before, rest) = rows.split_at_mut(rank);
        let (pivot, after) = rest.split_first_mut().expect("pivot row exists");
        let pivot: &Vec<Rational> = pivot;
        let eliminate = |row: &mut Vec<Rational>| {
            if row[col].is_zero() {
                return;
            }
            let factor = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        };
        exec.for_each_mut(before, eliminate);
        exec.for_each_mut(after, eliminate);
        pivots.push(col);
        rank += 1;
    }

    if rows[rank..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut values = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        values[c] = rows[i][cols].clone();
    }
    Some(Solution { values, pivots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn unique_solution() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let s = solve(&a, &v(&[3, 5]), Exec::Sequential).unwrap();
        assert_eq!(s.values, vec![frac(4, 5), frac(7, 5)]);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn underdetermined_prefers_leading_columns() {
        // x + y + z = 1, y + z = 1/2 over three unknowns: z is free.
        let a = m(&[&[1, 1, 1], &[0, 2, 2]]);
        let s = solve(&a, &v(&[1, 1]), Exec::Parallel).unwrap();
        assert_eq!(s.pivots, vec![0, 1]);
        assert_eq!(s.values, vec![frac(1, 2), frac(1, 2), int(0)]);
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &v(&[1, 3]), Exec::Sequential), None);
    }

    #[test]
    fn tall_consistent_system() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1], &[0, 0]]);
        let s = solve(&a, &v(&[2, 3, 5, 0]), Exec::Sequential).unwrap();
        assert_eq!(s.values, v(&[2, 3]));
    }
}
