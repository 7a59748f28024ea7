//! Execution strategy for the embarrassingly parallel loops (profile grids,
//! reachability search, Monte Carlo runs).
//!
//! With the `parallel` feature disabled, [`Execution::Parallel`] silently runs
//! sequentially. Both paths produce identical results: work items are indexed
//! and results are collected in index order.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Maps `f` over `0..len`, returning results in index order.
    pub fn map_range<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..len).into_par_iter().map(f).collect()
            }
            _ => (0..len).map(f).collect(),
        }
    }

    /// Like [`map_range`](Self::map_range) but short-circuits on the first error
    /// (in index order for the sequential path).
    pub fn try_map_range<T, E, F>(self, len: usize, f: F) -> Result<Vec<T>, E>
    where
        T: Send,
        E: Send,
        F: Fn(usize) -> Result<T, E> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..len).into_par_iter().map(f).collect()
            }
            _ => (0..len).map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_preserve_order() {
        let seq = Execution::Sequential.map_range(1000, |i| i * i);
        let par = Execution::Parallel.map_range(1000, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[31], 961);
    }

    #[test]
    fn try_map_propagates_errors() {
        let r: Result<Vec<usize>, String> = Execution::Parallel.try_map_range(10, |i| {
            if i == 7 {
                Err("seven".to_string())
            } else {
                Ok(i)
            }
        });
        assert_eq!(r, Err("seven".to_string()));
    }
}
