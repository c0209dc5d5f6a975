//! Tiny indirection over rayon so the rest of the crate can stay agnostic
//! about whether the `parallel` feature is enabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order. Runs on the rayon pool when the
/// `parallel` feature is enabled, sequentially otherwise. `f` must be pure
/// for the two modes to produce identical output, which every caller in
/// this crate guarantees.
pub(crate) fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential twin of [`map_collect`], always available; benches compare
/// the two and tests assert bitwise-equal results.
pub(crate) fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
