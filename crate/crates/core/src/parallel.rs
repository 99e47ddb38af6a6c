//! Execution strategy for sweeps over independent samples.
//!
//! Every sample is computed by the same sequential kernel, so the parallel
//! and sequential paths produce bit-identical results.

/// How a sweep over independent samples is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Data-parallel over samples; falls back to sequential when the
    /// `parallel` feature is disabled.
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// `(0..len).map(f)` scheduled according to `execution`.
pub fn map_indices<T, F>(len: usize, execution: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..len).into_par_iter().map(f).collect()
        }
        _ => (0..len).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_agree() {
        let f = |i: usize| (i as f64).sqrt().sin();
        let a = map_indices(1000, Execution::Sequential, f);
        let b = map_indices(1000, Execution::Parallel, f);
        assert_eq!(a, b);
    }
}
