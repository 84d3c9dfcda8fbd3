//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (default) `Execution::Parallel` runs on the
//! rayon pool; without it every request runs sequentially. Results keep input
//! order either way, so reports are identical across modes.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

#[cfg(feature = "parallel")]
pub fn par_map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match exec {
        Execution::Parallel => items.par_iter().map(f).collect(),
        Execution::Sequential => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, R, F>(_exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Parallel sum of `f` over `0..n`, reduced in index order within chunks.
pub fn par_sum<F>(exec: Execution, n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let idx: Vec<usize> = (0..n).collect();
    par_map(exec, &idx, |&i| f(i)).into_iter().sum()
}
