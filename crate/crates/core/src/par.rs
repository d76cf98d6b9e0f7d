//! Execution strategy for data-parallel sweeps.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] fans work
//! out over rayon's global pool. Without it, both variants run on the
//! calling thread, so callers never need their own `cfg` switches.

/// How a sweep over independent work items is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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
    /// Maps `f` over `items`, preserving input order in the output.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    /// Maps `f` over `items` and folds the partial results with `combine`.
    /// `combine` must be associative and commutative for the parallel and
    /// sequential paths to agree.
    pub fn map_reduce<T, R, F, C>(self, items: Vec<T>, identity: R, f: F, combine: C) -> R
    where
        T: Send,
        R: Send + Clone + Sync,
        F: Fn(T) -> R + Sync + Send,
        C: Fn(R, R) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items
                    .into_par_iter()
                    .map(f)
                    .reduce(|| identity.clone(), &combine)
            }
            _ => items.into_iter().map(f).fold(identity, combine),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let items: Vec<u64> = (1..=1000).collect();
        let seq = Exec::Sequential.map_reduce(items.clone(), 0u64, |x| x * x, |a, b| a + b);
        let par = Exec::Parallel.map_reduce(items, 0u64, |x| x * x, |a, b| a + b);
        assert_eq!(seq, par);
        assert_eq!(
            Exec::Sequential.map_range(50, |i| i * 3),
            Exec::Parallel.map_range(50, |i| i * 3)
        );
    }
}
