//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature (default) the hot loops run on rayon's global
//! pool; without it every policy degrades to a plain sequential iterator.
//! Results are always collected in input order, so output never depends on
//! the policy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    pub fn for_each_mut<T, F>(self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter_mut().for_each(f),
            _ => items.iter_mut().for_each(f),
        }
    }

    /// Maps then folds with an associative `combine`; `identity` must be neutral.
    pub fn map_reduce<T, U, F, I, C>(self, items: &[T], f: F, identity: I, combine: C) -> U
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
        I: Fn() -> U + Sync + Send,
        C: Fn(U, U) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).reduce(identity, combine),
            _ => items.iter().map(f).fold(identity(), combine),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.map(&xs, |x| x * x)[999], 998001);
            assert_eq!(exec.map_reduce(&xs, |x| *x, || 0, |a, b| a + b), 499500);
            let mut ys = xs.clone();
            exec.for_each_mut(&mut ys, |y| *y += 1);
            assert_eq!(ys[0], 1);
        }
    }
}
