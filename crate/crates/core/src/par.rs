//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (default) work is spread over the rayon pool;
//! without it everything runs on the calling thread. Results keep input order
//! either way.

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Whether this build runs batches in parallel.
pub const PARALLEL: bool = cfg!(feature = "parallel");
