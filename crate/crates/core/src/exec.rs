//! Work distribution: data-parallel mapping when the `parallel` feature is
//! enabled, with a sequential twin that is always available so both paths
//! can be compared directly.

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Send + Sync,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Send + Sync,
{
    map_collect_seq(items, f)
}

pub(crate) fn map_collect_seq<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    F: Fn(I) -> T,
{
    items.into_iter().map(f).collect()
}
