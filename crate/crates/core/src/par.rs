//! Execution strategy for the data-parallel loops.
//!
//! With the `parallel` feature (default) `Strategy::Parallel` fans work out
//! over rayon; without it every strategy runs sequentially. Results always
//! come back in input order.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    /// True when this strategy actually runs on the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map_ordered<T, R, F>(strategy: Strategy, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = strategy;
    items.into_iter().map(f).collect()
}
