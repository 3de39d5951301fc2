//! Data-parallel map helpers with a sequential fallback.
//!
//! Every parallel site in this crate is an elementwise map whose per-element
//! work is deterministic; reductions over the mapped results are always done
//! sequentially in index order so outputs are bit-identical regardless of
//! thread count or the `parallel` feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, collecting results in index order.
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

