//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the helpers run on the rayon pool;
//! without it, or under [`Execution::Sequential`], they run in order on the
//! calling thread. Results are always returned in index order, so any
//! reduction over them is independent of the thread count.

/// How a bulk loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run loops in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Evaluate `f(i)` for `i in 0..len`, returned in index order.
pub fn map_range<T, F>(len: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..len).into_par_iter().map(f).collect()
        }
        _ => (0..len).map(f).collect(),
    }
}

/// Evaluate `f` on every element of `items`, returned in order.
pub fn map_slice<S, T, F>(items: &[S], exec: Execution, f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Ordered sum of `f(i)` for `i in 0..len`.
///
/// Partial results are combined in index order in fixed-size blocks so the
/// rounding is identical for every thread count.
pub fn sum_range<F>(len: usize, exec: Execution, f: F) -> num_complex::Complex64
where
    F: Fn(usize) -> num_complex::Complex64 + Sync + Send,
{
    const BLOCK: usize = 64;
    let blocks = len.div_ceil(BLOCK);
    let partial = map_range(blocks, exec, |blk| {
        let lo = blk * BLOCK;
        let hi = (lo + BLOCK).min(len);
        (lo..hi).map(&f).sum::<num_complex::Complex64>()
    });
    partial.into_iter().sum()
}
