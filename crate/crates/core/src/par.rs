//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs on the
//! rayon global pool; without it every call runs sequentially. Results are
//! always returned in input order, so reports do not depend on scheduling.

/// How an independent batch of work items is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `items.map(f).collect()`, in order.
pub fn map_collect<T, R, F>(exec: Execution, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}

/// `(0..n).map(f).collect()`, in order.
pub fn map_range<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// First index in `0..n` (smallest) for which `f` returns `Some`.
pub fn find_first<R, F>(exec: Execution, n: usize, f: F) -> Option<(usize, R)>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_map_first(|i| f(i).map(|r| (i, r)));
    }
    let _ = exec;
    (0..n).find_map(|i| f(i).map(|r| (i, r)))
}
